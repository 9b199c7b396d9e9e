// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "path_oracle.hpp"
#include "su11walk/su11walk.hpp"

using namespace su11walk;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const CoinPair kUp{complex(1.0), complex(0.0)};
const CoinPair kYPlus{complex(1.0 / std::numbers::sqrt2), complex(0.0, 1.0 / std::numbers::sqrt2)};

Trajectory walk(const Frame& f, std::size_t sites, std::size_t steps, CoinPair coin = kUp,
                PhaseMode mode = PhaseMode::physical) {
  RunConfig cfg;
  cfg.sites = sites;
  cfg.frame = f;
  cfg.steps = steps;
  cfg.coin = coin;
  cfg.mode = mode;
  return run(cfg);
}

double mean_entropy(const Trajectory& t, std::size_t from, std::size_t to) {
  double s = 0.0;
  for (std::size_t l = from; l <= to; ++l) s += t.steps[l].entropy;
  return s / static_cast<double>(to - from + 1);
}

Outcome ideal_oracle_equivalence() {
  constexpr std::size_t L = 16;
  double worst = 0.0;
  for (const CoinPair& coin : {kUp, CoinPair{complex(0.0), complex(1.0)}, kYPlus}) {
    const auto t = walk(Frame::ideal(), L, 10, coin);
    for (std::size_t l = 0; l <= 10; ++l) {
      const auto P = testing::enumerate_paths(l, coin.up, coin.down, 0, L);
      for (std::size_t i = 0; i < L; ++i) {
        const long n = static_cast<long>(i) - static_cast<long>(L / 2);
        const auto it = P.find(n);
        worst = std::max(worst, std::abs(t.steps[l].probabilities.P[i] - (it == P.end() ? 0.0 : it->second)));
      }
    }
  }
  const auto t3 = walk(Frame::ideal(), L, 3);
  const auto& P3 = t3.steps[3].probabilities.P;
  const auto at = [&](long n) { return P3[static_cast<std::size_t>(n + 8)]; };
  const double d3 = std::max({std::abs(at(3) - 0.125), std::abs(at(1) - 0.625), std::abs(at(-1) - 0.125),
                              std::abs(at(-3) - 0.125)});
  return {worst <= 1e-12 && d3 <= 1e-12,
          fmt("max|P_engine - P_paths| = %.2e over l<=10, 3 coins; 3-step deviation %.2e", worst, d3)};
}

Outcome su11_k10_reproduces_ideal() {
  const auto ideal = walk(Frame::ideal(), 200, 40).final().probabilities.P;
  const auto P = walk(Frame::su11(10, 2), 200, 40).final().probabilities.P;
  const auto Q = walk(Frame::su11(10, 2), 200, 40, kUp, PhaseMode::paper_idealized).final().probabilities.P;
  const double tv = total_variation(P, ideal);
  const double odd = odd_site_mass(P, 200);
  const double g1 = std::abs(su11_overlap(10, 2, 2 * std::numbers::pi / 200));
  return {tv < 0.02 && odd < 1e-3,
          fmt("TV = %.4f (need < 0.02), odd-site mass = %.4f (need < 1e-3); idealized mode TV %.4f; "
              "nearest-neighbour |overlap| = %.3f",
              tv, odd, total_variation(Q, ideal), g1)};
}

Outcome su11_k34_smears_parity() {
  const auto t = walk(Frame::su11(0.75, 2), 200, 40);
  const double odd = odd_site_mass(t.final().probabilities.P, 200);
  return {odd > 0.01, fmt("odd-site mass = %.4f (need > 0.01)", odd)};
}

Outcome ballistic_spread() {
  const auto fit_of = [](const Frame& f) {
    const auto t = walk(f, 200, 40);
    std::vector<double> x, y;
    for (std::size_t l = 1; l <= 40; ++l) {
      x.push_back(static_cast<double>(l));
      y.push_back(t.steps[l].sigma);
    }
    return fit_line(x, y);
  };
  const auto ideal = fit_of(Frame::ideal());
  const auto k10 = fit_of(Frame::su11(10, 2));
  const auto k34 = fit_of(Frame::su11(0.75, 2));
  const double slope_dev = std::abs(k10.slope / ideal.slope - 1.0);
  return {ideal.r_squared >= 0.999 && k10.r_squared >= 0.995 && slope_dev <= 0.03 && k34.r_squared >= 0.98,
          fmt("R^2 ideal %.5f, k=10 %.5f (slope %+.2f%% vs ideal), k=3/4 %.5f", ideal.r_squared, k10.r_squared,
              100 * slope_dev, k34.r_squared)};
}

Outcome entanglement_asymptote() {
  const double a = mean_entropy(walk(Frame::ideal(), 256, 90, kUp), 60, 90);
  const double b = mean_entropy(walk(Frame::ideal(), 256, 90, kYPlus), 60, 90);
  return {std::abs(a - 0.872) <= 0.02 && std::abs(b - 0.872) <= 0.02,
          fmt("mean S_E(60..90): coin (1,0) %.4f, coin (1,i)/sqrt2 %.4f (target 0.872 +- 0.02)", a, b)};
}

Outcome initial_state_dependence() {
  const auto pair = [](double r) {
    return std::pair{mean_entropy(walk(Frame::su11(10, r), 200, 90, kUp), 60, 90),
                     mean_entropy(walk(Frame::su11(10, r), 200, 90, kYPlus), 60, 90)};
  };
  const auto [s1, s2] = pair(0.5);
  const auto [t1, t2] = pair(3.0);
  const bool ok = std::abs(s1 - s2) > 0.05 && std::abs(t1 - t2) <= 0.03 && std::abs(t1 - 0.872) <= 0.03 &&
                  std::abs(t2 - 0.872) <= 0.03;
  return {ok, fmt("r=0.5: %.4f vs %.4f (|diff| %.4f, need > 0.05); r=3: %.4f vs %.4f", s1, s2, std::abs(s1 - s2),
                  t1, t2)};
}

Outcome overlap_formula() {
  double worst = 0.0;
  for (double k : {0.25, 0.75, 1.0, 10.0})
    for (double r : {0.5, 1.0, 1.5}) {
      const std::size_t M = required_cutoff(k, r, 1e-12);
      const auto base = disk_coefficients({k, r, 0.0}, M);
      for (int j = 0; j < 16; ++j) {
        const double dth = -std::numbers::pi + 2 * std::numbers::pi * j / 16.0;
        const auto c = disk_coefficients({k, r, dth}, M);
        complex ip = 0.0;
        for (std::size_t m = 0; m < M; ++m) ip += std::conj(c.c[m]) * base.c[m];
        worst = std::max(worst, std::abs(ip - su11_overlap(k, r, dth)));
      }
    }
  return {worst <= 1e-10, fmt("max |series - closed form| = %.2e over 12 (k,r) x 16 angles", worst)};
}

Outcome engine_oracle_equivalence() {
  double dP = 0, dS = 0, norm_err = 0, ideal_dP = 0;
  bool all_pass = true;
  for (double k : {0.25, 0.75, 1.0, 10.0})
    for (double r : {0.5, 1.0}) {
      CrossCheckConfig c;
      c.k = k;
      c.r = r;
      c.sites = 16;
      c.steps = 10;
      const auto rep = cross_check(c);
      all_pass = all_pass && rep.passed;
      dP = std::max(dP, rep.max_dP);
      dS = std::max(dS, rep.max_dS);
      norm_err = std::max({norm_err, rep.max_engine_norm_error, rep.max_oracle_norm_error});
      c.mode = PhaseMode::paper_idealized;
      ideal_dP = std::max(ideal_dP, cross_check(c).max_dP);
    }
  const bool ok = all_pass && dP < 1e-8 && dS < 1e-8 && norm_err <= 1e-10 && ideal_dP > 1e-3;
  return {ok, fmt("physical: max|dP| %.2e, max|dS| %.2e, norm error %.2e; idealized max|dP| %.3g (need > 1e-3)", dP,
                  dS, norm_err, ideal_dP)};
}

Outcome geometry_invariants() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> kd(0.25, 20.0), rd(0.0, 3.0), td(-std::numbers::pi, std::numbers::pi);
  double worst_h = 0.0, worst_d = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const SU11Params p{kd(rng), rd(rng), td(rng)};
    const auto h = hyperboloid_point(p);
    worst_h = std::max(worst_h, std::abs(h.minkowski_norm2() - p.k * p.k) / (p.k * p.k));
    worst_d = std::max(worst_d, std::abs(disk_point(p) - stereographic(h, p.k)));
  }
  return {worst_h <= 1e-10 && worst_d <= 1e-12,
          fmt("hyperboloid relative error %.2e, disk vs stereographic %.2e (10^4 samples, r in [0,3])", worst_h,
              worst_d)};
}

Outcome gram_properties() {
  std::vector<Frame> frames{Frame::ideal()};
  for (double a : {0.5, 1.0, 2.0, 5.0}) frames.push_back(Frame::hw(a));
  for (double k : {0.25, 0.75, 1.0, 10.0})
    for (double r : {0.5, 1.0, 2.0, 3.0}) frames.push_back(Frame::su11(k, r));
  double herm = 0, diag = 0, min_eig = 1e300, dual_gap = 0;
  for (std::size_t L : {std::size_t{8}, std::size_t{200}})
    for (const auto& f : frames) {
      const auto G = gram(f, L);
      herm = std::max(herm, G.max_hermiticity_error());
      diag = std::max(diag, G.max_diagonal_error());
      const double lam = G.min_eigenvalue();
      min_eig = std::min(min_eig, lam);
      // dense Hermitian eigensolver as an independent route
      Eigen::MatrixXcd D(L, L);
      for (std::size_t m = 0; m < L; ++m)
        for (std::size_t n = 0; n < L; ++n) D(m, n) = G(m, n);
      const double dense_min = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(D).eigenvalues().minCoeff();
      dual_gap = std::max(dual_gap, std::abs(dense_min - lam));
    }
  return {herm <= 1e-12 && diag <= 1e-12 && min_eig >= -1e-10 && dual_gap <= 1e-9,
          fmt("%zu frames x L in {8,200}: hermiticity %.1e, diagonal %.1e, min eigenvalue %.2e (dense check gap %.1e)",
              frames.size(), herm, diag, min_eig, dual_gap)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"ideal walk equals exhaustive path sum", ideal_oracle_equivalence},
      {"su11(k=10,r=2) reproduces the ideal walk", su11_k10_reproduces_ideal},
      {"su11(k=3/4,r=2) smears the parity constraint", su11_k34_smears_parity},
      {"ballistic spread of sigma(l)", ballistic_spread},
      {"entanglement asymptote 0.872", entanglement_asymptote},
      {"initial-state dependence of late-time entropy", initial_state_dependence},
      {"ladder series matches overlap closed form", overlap_formula},
      {"engine and Fock oracle agree", engine_oracle_equivalence},
      {"geometry invariants", geometry_invariants},
      {"Gram matrix properties", gram_properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
