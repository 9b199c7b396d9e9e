#pragma once

// Measurements on a walk state whose site basis is not orthogonal. Every
// quantity goes through the Gram matrix G[m][n] = <site_m|site_n>; with the
// ideal frame G is the identity and everything reduces to the textbook walk.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "su11walk/errors.hpp"
#include "su11walk/gram.hpp"
#include "su11walk/walk.hpp"

namespace su11walk {

struct ProbabilityDistribution {
  /// P_n indexed like WalkState::amplitudes() (index 0 is site -L/2).
  std::vector<double> P;
  /// Unnormalized <site_n| rho_walker |site_n>.
  std::vector<double> raw;
  /// sum_n raw_n.
  double normalizer = 1.0;
};

struct BlochVector {
  double Mx = 0.0;
  double My = 0.0;
  double Mz = 0.0;
  double p_plus = 1.0;
  double p_minus = 0.0;

  double length() const { return std::sqrt(Mx * Mx + My * My + Mz * Mz); }
};

namespace detail {

struct BranchVectors {
  std::vector<complex> up;
  std::vector<complex> down;
};

inline BranchVectors split_branches(const WalkState& s) {
  BranchVectors b{std::vector<complex>(s.sites()), std::vector<complex>(s.sites())};
  const auto a = s.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    b.up[i] = a[i].up;
    b.down[i] = a[i].down;
  }
  return b;
}

inline complex dot(std::span<const complex> a, std::span<const complex> b) {
  complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

// rho[s][s'] = <psi_s'|psi_s> where |psi_s> = sum_n c_{n,s} |site_n>.
struct CoinGram {
  complex uu, dd, ud;  // <up|up>, <down|down>, <up|down> (branch vectors)
};

inline CoinGram coin_gram(const WalkState& s, const GramMatrix& G) {
  detail::require(G.sites() == s.sites(), "observables: Gram matrix and state disagree on L");
  const auto b = split_branches(s);
  const auto gu = G.apply(b.up);
  const auto gd = G.apply(b.down);
  return {dot(b.up, gu), dot(b.down, gd), dot(b.up, gd)};
}

}  // namespace detail

/// sqrt(<psi|psi>) in the coherent-site representation.
inline double state_norm(const WalkState& s, const GramMatrix& G) {
  const auto cg = detail::coin_gram(s, G);
  const double n2 = cg.uu.real() + cg.dd.real();
  if (n2 < -1e-10) throw NumericalError("state_norm: negative squared norm (Gram matrix not PSD)");
  return std::sqrt(std::max(0.0, n2));
}

/// P_n = <site_n| rho_w |site_n> / N, with rho_w the walker's reduced density
/// matrix and N the sum over the L sites.
inline ProbabilityDistribution probabilities(const WalkState& s, const GramMatrix& G) {
  detail::require(G.sites() == s.sites(), "probabilities: Gram matrix and state disagree on L");
  const auto b = detail::split_branches(s);
  // <site_n|psi_s> = sum_m G[n][m] c_{m,s}
  const auto pu = G.apply(b.up);
  const auto pd = G.apply(b.down);
  ProbabilityDistribution out;
  out.raw.resize(s.sites());
  out.normalizer = 0.0;
  for (std::size_t n = 0; n < s.sites(); ++n) {
    out.raw[n] = std::norm(pu[n]) + std::norm(pd[n]);
    out.normalizer += out.raw[n];
  }
  if (!(out.normalizer > 0.0)) throw NumericalError("probabilities: zero total weight");
  out.P.resize(s.sites());
  for (std::size_t n = 0; n < s.sites(); ++n) out.P[n] = out.raw[n] / out.normalizer;
  return out;
}

/// Circular spread sqrt(<theta^2> - <theta>^2) using unwrapped labels
/// theta_n = n dtheta, n in [-L/2, L/2).
inline double std_dev(std::span<const double> P, std::size_t sites) {
  detail::require(P.size() == sites && sites >= 1, "std_dev: distribution length must equal L");
  const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(sites);
  const long first = -static_cast<long>(sites / 2);
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < sites; ++i) {
    const double theta = static_cast<double>(first + static_cast<long>(i)) * dtheta;
    m1 += P[i] * theta;
    m2 += P[i] * theta * theta;
  }
  return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

inline double std_dev(const ProbabilityDistribution& P, std::size_t sites) { return std_dev(P.P, sites); }

/// Coin Bloch vector M_i = <psi|sigma_i|psi> / <psi|psi> and p_+- = (1 +- |M|) / 2.
inline BlochVector bloch_vector(const WalkState& s, const GramMatrix& G) {
  const auto cg = detail::coin_gram(s, G);
  if (std::abs(cg.uu.imag()) > 1e-10 || std::abs(cg.dd.imag()) > 1e-10)
    throw NumericalError("bloch_vector: complex diagonal coin weight (Gram matrix not Hermitian)");
  const double n2 = cg.uu.real() + cg.dd.real();
  if (!(n2 > 0.0)) throw NumericalError("bloch_vector: zero state norm");
  BlochVector b;
  b.Mx = 2.0 * cg.ud.real() / n2;
  b.My = 2.0 * cg.ud.imag() / n2;
  b.Mz = (cg.uu.real() - cg.dd.real()) / n2;
  const double len = b.length();
  if (len > 1.0 + 1e-8) throw NumericalError("bloch_vector: |M| exceeds 1");
  const double clamped = std::min(1.0, len);
  b.p_plus = 0.5 * (1.0 + clamped);
  b.p_minus = 0.5 * (1.0 - clamped);
  return b;
}

/// Binary entropy of (p_+, p_-), in bits.
inline double entanglement_entropy(const BlochVector& b) {
  const auto h = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  return std::clamp(h(b.p_plus) + h(b.p_minus), 0.0, 1.0);
}

/// Least-squares line y = slope * x + intercept with the usual R^2.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

inline LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  detail::require(x.size() == y.size() && x.size() >= 2, "fit_line: need two or more paired samples");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  detail::require(sxx > 0.0, "fit_line: x values are all equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += e * e;
  }
  f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return f;
}

inline double total_variation(std::span<const double> p, std::span<const double> q) {
  detail::require(p.size() == q.size(), "total_variation: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

/// Probability on sites whose label n has n - n0 odd.
inline double odd_site_mass(std::span<const double> P, std::size_t sites, long n0 = 0) {
  const long first = -static_cast<long>(sites / 2);
  double s = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i)
    if (((first + static_cast<long>(i) - n0) % 2 + 2) % 2 == 1) s += P[i];
  return s;
}

}  // namespace su11walk
