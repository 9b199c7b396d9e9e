#pragma once

// Turns configs into result tables: walk experiments, overlap sweeps, and
// engine-versus-oracle suites.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "su11walk/fock_oracle.hpp"
#include "su11walk/io/config.hpp"
#include "su11walk/io/table.hpp"
#include "su11walk/trajectory.hpp"

namespace su11walk::io {

inline json tool_metadata() { return {{"tool", kToolName}, {"version", kToolVersion}}; }

inline RunConfig to_run_config(const ExperimentConfig& c) {
  RunConfig r;
  r.sites = c.sites;
  r.start_site = c.start_site;
  r.coin = c.coin;
  r.frame = c.frame;
  r.mode = c.mode;
  r.steps = c.steps;
  r.coin_operator = c.coin_operator.build();
  r.branch_index = c.branch_index;
  return r;
}

inline std::vector<ResultTable> run_experiment(const ExperimentConfig& c) {
  const Trajectory t = run(to_run_config(c));
  const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(c.sites);
  const long first = -static_cast<long>(c.sites / 2);
  std::vector<ResultTable> out;
  for (const OutputKind kind : c.outputs) {
    ResultTable tab;
    tab.name = c.name + "_" + std::string(to_string(kind));
    tab.metadata = tool_metadata();
    tab.metadata["output"] = std::string(to_string(kind));
    tab.metadata["config"] = config_to_json(c);
    switch (kind) {
      case OutputKind::probabilities: {
        tab.columns = {"site", "theta", "probability", "raw"};
        const auto& P = t.final().probabilities;
        for (std::size_t i = 0; i < c.sites; ++i) {
          const double n = static_cast<double>(first + static_cast<long>(i));
          tab.rows.push_back({n, n * dtheta, P.P[i], P.raw[i]});
        }
        tab.metadata["step"] = c.steps;
        tab.metadata["normalizer"] = P.normalizer;
        break;
      }
      case OutputKind::sigma:
        tab.columns = {"step", "sigma"};
        for (std::size_t l = 0; l < t.steps.size(); ++l) tab.rows.push_back({static_cast<double>(l), t.steps[l].sigma});
        break;
      case OutputKind::entropy:
        tab.columns = {"step", "Mx", "My", "Mz", "p_plus", "entropy"};
        for (std::size_t l = 0; l < t.steps.size(); ++l) {
          const auto& b = t.steps[l].bloch;
          tab.rows.push_back({static_cast<double>(l), b.Mx, b.My, b.Mz, b.p_plus, t.steps[l].entropy});
        }
        break;
      case OutputKind::gram_row:
        tab.columns = {"site", "theta", "re", "im", "abs"};
        for (std::size_t i = 0; i < c.sites; ++i) {
          const long n = first + static_cast<long>(i);
          const complex g = c.frame.overlap(n, 0, c.sites);
          tab.rows.push_back({static_cast<double>(n), static_cast<double>(n) * dtheta, g.real(), g.imag(), std::abs(g)});
        }
        break;
      case OutputKind::overlap_curve: {
        tab.columns = {"theta", "abs_overlap"};
        const std::size_t points = 4 * c.sites + 1;
        for (std::size_t i = 0; i < points; ++i) {
          const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(i) / (points - 1);
          double v = 1.0;
          std::visit(
              [&](const auto& f) {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, Frame::HW>) v = std::abs(hw_overlap(f.alpha_mag, theta));
                if constexpr (std::is_same_v<T, Frame::SU11>) v = std::abs(su11_overlap(f.k, f.r, theta));
                if constexpr (std::is_same_v<T, Frame::Ideal>) v = theta == 0.0 ? 1.0 : 0.0;
              },
              c.frame.variant());
          tab.rows.push_back({theta, v});
        }
        break;
      }
    }
    out.push_back(std::move(tab));
  }
  return out;
}

struct OverlapSweep {
  std::vector<double> ks;
  std::vector<double> rs;
  std::size_t points = 201;
  std::string name = "overlap";
};

/// |<k, r e^{i theta} | k, r>| on theta in [-pi, pi], one column per (k, r) pair.
/// Metadata records whether the magnitude is non-increasing in k (at each r) and in r
/// (at each k) at every sampled theta != 0.
inline ResultTable overlap_table(const OverlapSweep& s) {
  su11walk::detail::require(!s.ks.empty() && !s.rs.empty(), "overlap: k and r grids must be non-empty");
  su11walk::detail::require(s.points >= 2, "overlap: need at least two theta points");
  for (double k : s.ks) su11walk::detail::require(std::isfinite(k) && k > 0.0, "overlap: k values must be positive");
  for (double r : s.rs) su11walk::detail::require(std::isfinite(r) && r >= 0.0, "overlap: r values must be non-negative");

  ResultTable t;
  t.name = s.name;
  t.columns = {"theta"};
  for (double k : s.ks)
    for (double r : s.rs) t.columns.push_back("k=" + format_number(k) + ",r=" + format_number(r));

  auto ks = s.ks;
  auto rs = s.rs;
  std::sort(ks.begin(), ks.end());
  std::sort(rs.begin(), rs.end());
  bool dec_k = true;
  bool dec_r = true;
  for (std::size_t i = 0; i < s.points; ++i) {
    const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(i) / (s.points - 1);
    std::vector<double> row{theta};
    for (double k : s.ks)
      for (double r : s.rs) row.push_back(std::abs(su11_overlap(k, r, theta)));
    t.rows.push_back(std::move(row));
    if (theta == 0.0) continue;
    for (double r : rs)
      for (std::size_t a = 1; a < ks.size(); ++a)
        if (std::abs(su11_overlap(ks[a], r, theta)) > std::abs(su11_overlap(ks[a - 1], r, theta))) dec_k = false;
    for (double k : ks)
      for (std::size_t a = 1; a < rs.size(); ++a)
        if (std::abs(su11_overlap(k, rs[a], theta)) > std::abs(su11_overlap(k, rs[a - 1], theta))) dec_r = false;
  }
  t.metadata = tool_metadata();
  t.metadata["output"] = "overlap";
  t.metadata["k"] = s.ks;
  t.metadata["r"] = s.rs;
  t.metadata["points"] = s.points;
  t.metadata["non_increasing_in_k"] = dec_k;
  t.metadata["non_increasing_in_r"] = dec_r;
  return t;
}

/// Default engine/oracle grid: k in {1/4, 3/4, 1, 10}, r in {0.5, 1}, L = 16, 10 steps.
inline std::vector<CrossCheckConfig> default_crosscheck_suite(bool include_idealized = false) {
  std::vector<CrossCheckConfig> out;
  for (auto mode : {PhaseMode::physical, PhaseMode::paper_idealized}) {
    if (mode == PhaseMode::paper_idealized && !include_idealized) continue;
    for (double k : {0.25, 0.75, 1.0, 10.0})
      for (double r : {0.5, 1.0}) {
        CrossCheckConfig c;
        c.k = k;
        c.r = r;
        c.sites = 16;
        c.steps = 10;
        c.mode = mode;
        out.push_back(c);
      }
  }
  return out;
}

/// Suite file: {"configs": [{"k":..,"r":..,"sites":..,"steps":..,"mode":..,"start_site":..}, ...]}
inline std::vector<CrossCheckConfig> parse_crosscheck_suite(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("configs") || !j["configs"].is_array() || j["configs"].empty())
    throw ConfigError("configs", "expected a non-empty array");
  std::vector<CrossCheckConfig> out;
  for (std::size_t i = 0; i < j["configs"].size(); ++i) {
    const auto& cj = j["configs"][i];
    const std::string path = "configs[" + std::to_string(i) + "].";
    if (!cj.is_object()) throw ConfigError(path, "expected an object");
    CrossCheckConfig c;
    c.k = detail::number_field(cj, "k", path);
    c.r = detail::number_field(cj, "r", path);
    if (cj.contains("sites")) {
      if (!cj["sites"].is_number_unsigned()) throw ConfigError(path + "sites", "expected a positive integer");
      c.sites = cj["sites"].get<std::size_t>();
    }
    if (cj.contains("steps")) {
      if (!cj["steps"].is_number_unsigned()) throw ConfigError(path + "steps", "expected a non-negative integer");
      c.steps = cj["steps"].get<std::size_t>();
    }
    if (cj.contains("start_site")) {
      if (!cj["start_site"].is_number_integer()) throw ConfigError(path + "start_site", "expected an integer");
      c.start_site = cj["start_site"].get<long>();
    }
    if (cj.contains("mode")) {
      if (!cj["mode"].is_string()) throw ConfigError(path + "mode", "expected a string");
      try {
        c.mode = phase_mode_from_string(cj["mode"].get<std::string>());
      } catch (const InvalidArgument& e) {
        throw ConfigError(path + "mode", e.what());
      }
    }
    if (!(c.k > 0.0)) throw ConfigError(path + "k", "must be positive");
    if (c.sites < 1 || c.sites > 64) throw ConfigError(path + "sites", "desk-scale bound is 1..64");
    if (c.steps > 20) throw ConfigError(path + "steps", "desk-scale bound is 20");
    if (c.r < 0.0 || c.r > 1.5) throw ConfigError(path + "r", "desk-scale bound is 0..1.5");
    const long lo = -static_cast<long>(c.sites / 2);
    if (c.start_site < lo || c.start_site >= lo + static_cast<long>(c.sites))
      throw ConfigError(path + "start_site", "outside the site range");
    out.push_back(c);
  }
  return out;
}

struct CrossCheckSuiteResult {
  std::vector<CrossCheckReport> reports;
  /// Every physical-mode entry passed.
  bool ok = true;
  json report;
};

inline CrossCheckSuiteResult run_crosscheck_suite(const std::vector<CrossCheckConfig>& suite) {
  CrossCheckSuiteResult res;
  res.report = tool_metadata();
  res.report["entries"] = json::array();
  for (const auto& cfg : suite) {
    const auto rep = cross_check(cfg);
    if (cfg.mode == PhaseMode::physical && !rep.passed) res.ok = false;
    json e;
    e["k"] = cfg.k;
    e["r"] = cfg.r;
    e["sites"] = cfg.sites;
    e["steps"] = cfg.steps;
    e["start_site"] = cfg.start_site;
    e["mode"] = std::string(to_string(cfg.mode));
    e["cutoff"] = rep.cutoff;
    e["max_dP"] = rep.max_dP;
    e["max_dM"] = rep.max_dM;
    e["max_dS"] = rep.max_dS;
    e["max_engine_norm_error"] = rep.max_engine_norm_error;
    e["max_oracle_norm_error"] = rep.max_oracle_norm_error;
    e["tolerance"] = cfg.tolerance;
    e["passed"] = rep.passed;
    e["status"] = rep.passed ? "pass" : (rep.expected_divergence ? "expected-divergence" : "fail");
    if (!rep.first_failure.empty()) e["first_failure"] = rep.first_failure;
    res.report["entries"].push_back(std::move(e));
    res.reports.push_back(rep);
  }
  res.report["ok"] = res.ok;
  return res;
}

}  // namespace su11walk::io
