#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "su11walk/coin.hpp"
#include "su11walk/frame.hpp"
#include "su11walk/gram.hpp"
#include "su11walk/observables.hpp"
#include "su11walk/walk.hpp"

namespace su11walk {

struct RunConfig {
  std::size_t sites = 200;
  long start_site = 0;
  CoinPair coin{complex(1.0), complex(0.0)};
  Frame frame = Frame::ideal();
  PhaseMode mode = PhaseMode::physical;
  std::size_t steps = 0;
  CoinOperator coin_operator = hadamard();
  /// Overrides the frame's branch index (k for SU(1,1), else 0).
  std::optional<double> branch_index;
};

struct StepRecord {
  WalkState state;
  ProbabilityDistribution probabilities;
  double sigma = 0.0;
  BlochVector bloch;
  double entropy = 0.0;
  double norm = 1.0;
};

struct Trajectory {
  RunConfig config;
  GramMatrix gram;
  std::vector<StepRecord> steps;

  const StepRecord& final() const { return steps.back(); }
};

inline StepRecord measure(WalkState s, const GramMatrix& G) {
  StepRecord rec{std::move(s), {}, 0.0, {}, 0.0, 1.0};
  rec.probabilities = probabilities(rec.state, G);
  rec.sigma = std_dev(rec.probabilities, rec.state.sites());
  rec.bloch = bloch_vector(rec.state, G);
  rec.entropy = entanglement_entropy(rec.bloch);
  rec.norm = state_norm(rec.state, G);
  return rec;
}

/// Evolves l = 0..steps and records observables after each step.
inline Trajectory run(const RunConfig& cfg) {
  detail::require(cfg.coin_operator.is_unitary(), "run: coin operator is not unitary");
  Trajectory t{cfg, gram(cfg.frame, cfg.sites), {}};
  t.gram.validate();
  WalkState s = initial_state(cfg.sites, cfg.start_site, cfg.coin, cfg.frame, cfg.mode);
  if (cfg.branch_index) s = with_branch_index(s, *cfg.branch_index);
  t.steps.reserve(cfg.steps + 1);
  t.steps.push_back(measure(s, t.gram));
  for (std::size_t l = 1; l <= cfg.steps; ++l) {
    s = step(s, cfg.coin_operator);
    t.steps.push_back(measure(s, t.gram));
  }
  return t;
}

}  // namespace su11walk
