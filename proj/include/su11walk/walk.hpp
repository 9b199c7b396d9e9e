#pragma once

// Amplitude evolution of the walker (x) coin state
//
//   |psi> = sum_n [ c_up(n) |site_n> |up> + c_down(n) |site_n> |down> ]
//
// on a cycle of L coherent-state sites. The site states need not be
// orthogonal; the amplitudes are an exact representation of |psi> because the
// conditional shift maps each site state onto a neighbouring one (times a
// coin-branch phase). Observables that need the site overlaps live in
// observables.hpp.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <algorithm>
#include <vector>

#include "su11walk/coin.hpp"
#include "su11walk/errors.hpp"
#include "su11walk/frame.hpp"

namespace su11walk {

enum class PhaseMode {
  /// Shift is exp(-i dtheta K0 (x) sigma_z) exactly; each coin branch picks up
  /// e^{-/+ i dtheta k} from the vacuum eigenvalue of K0.
  physical,
  /// Shift moves sites with no phase at all.
  paper_idealized,
};

inline std::string_view to_string(PhaseMode m) {
  return m == PhaseMode::physical ? "physical" : "paper-idealized";
}

inline PhaseMode phase_mode_from_string(std::string_view s) {
  if (s == "physical") return PhaseMode::physical;
  if (s == "paper-idealized") return PhaseMode::paper_idealized;
  throw InvalidArgument("unknown phase mode '" + std::string(s) + "' (expected physical|paper-idealized)");
}

/// +1 rotates up-branch sites counter-clockwise (n -> n+1); -1 is the inverse shift.
enum class ShiftDirection : int { forward = 1, backward = -1 };

class WalkState {
 public:
  WalkState(std::size_t sites, Frame frame, PhaseMode mode, double branch_index)
      : amps_(sites), frame_(frame), mode_(mode), branch_index_(branch_index) {
    detail::require(sites >= 1, "WalkState: need at least one site");
    detail::require(std::isfinite(branch_index), "WalkState: non-finite branch index");
  }

  std::size_t sites() const { return amps_.size(); }
  /// Lowest site label; labels run over [first_site, first_site + L).
  long first_site() const { return -static_cast<long>(sites() / 2); }
  double dtheta() const { return 2.0 * std::numbers::pi / static_cast<double>(sites()); }

  std::size_t index_of(long site) const {
    const long L = static_cast<long>(sites());
    return static_cast<std::size_t>((((site - first_site()) % L) + L) % L);
  }
  long site_of(std::size_t index) const { return first_site() + static_cast<long>(index); }
  double theta_of(std::size_t index) const { return static_cast<double>(site_of(index)) * dtheta(); }

  std::span<const CoinPair> amplitudes() const { return amps_; }
  std::span<CoinPair> amplitudes() { return amps_; }
  const CoinPair& at(long site) const { return amps_[index_of(site)]; }
  CoinPair& at(long site) { return amps_[index_of(site)]; }

  const Frame& frame() const { return frame_; }
  PhaseMode phase_mode() const { return mode_; }
  double branch_index() const { return branch_index_; }
  std::size_t step_count() const { return step_count_; }
  void set_step_count(std::size_t s) { step_count_ = s; }

  /// sum_n |c_up|^2 + |c_down|^2 (the state norm when sites are orthonormal).
  double amplitude_norm2() const {
    double s = 0.0;
    for (const auto& a : amps_) s += a.norm2();
    return s;
  }

 private:
  std::vector<CoinPair> amps_;
  Frame frame_;
  PhaseMode mode_;
  double branch_index_;
  std::size_t step_count_ = 0;
};

/// Localized start |site_n0> (x) (a_up |up> + a_down |down>). The branch index
/// defaults to the frame's (k for SU(1,1), 0 otherwise).
inline WalkState initial_state(std::size_t sites, long n0, CoinPair coin, const Frame& frame,
                               PhaseMode mode = PhaseMode::physical) {
  detail::require(sites >= 1, "initial_state: need at least one site");
  const long lo = -static_cast<long>(sites / 2);
  detail::require(n0 >= lo && n0 < lo + static_cast<long>(sites),
                  "initial_state: start site " + std::to_string(n0) + " outside [" + std::to_string(lo) + ", " +
                      std::to_string(lo + static_cast<long>(sites)) + ")");
  const double n2 = coin.norm2();
  if (std::abs(n2 - 1.0) > 1e-12) {
    std::string msg = "initial_state: coin has |a_up|^2 + |a_down|^2 = " + std::to_string(n2) + ", expected 1";
    if (n2 > 0.0) {
      const double s = 1.0 / std::sqrt(n2);
      const auto fmt = [](complex z) { return std::to_string(z.real()) + (z.imag() < 0 ? "-" : "+") +
                                              std::to_string(std::abs(z.imag())) + "i"; };
      msg += "; normalized suggestion: up=" + fmt(coin.up * s) + ", down=" + fmt(coin.down * s);
    }
    throw InvalidArgument(msg);
  }
  WalkState s(sites, frame, mode, frame.branch_index());
  s.at(n0) = coin;
  return s;
}

inline WalkState with_branch_index(const WalkState& s, double branch_index) {
  WalkState out(s.sites(), s.frame(), s.phase_mode(), branch_index);
  std::copy(s.amplitudes().begin(), s.amplitudes().end(), out.amplitudes().begin());
  out.set_step_count(s.step_count());
  return out;
}

inline WalkState coin_flip(const WalkState& s, const CoinOperator& c) {
  WalkState out = s;
  for (auto& a : out.amplitudes()) a = c.apply(a);
  return out;
}

/// Conditional shift: up amplitudes move n -> n + dir, down amplitudes n -> n - dir.
/// In physical mode the up branch gains e^{-i dir dtheta k}, the down branch the conjugate.
inline WalkState shift(const WalkState& s, double branch_index,
                       ShiftDirection direction = ShiftDirection::forward) {
  WalkState out(s.sites(), s.frame(), s.phase_mode(), s.branch_index());
  out.set_step_count(s.step_count());
  const std::size_t L = s.sites();
  const std::size_t fwd = static_cast<int>(direction) > 0 ? 1 : L - 1;
  const std::size_t bwd = L - fwd;
  complex up_phase(1.0, 0.0);
  complex down_phase(1.0, 0.0);
  if (s.phase_mode() == PhaseMode::physical && branch_index != 0.0) {
    const double angle = static_cast<int>(direction) * s.dtheta() * branch_index;
    up_phase = std::polar(1.0, -angle);
    down_phase = std::polar(1.0, angle);
  }
  const auto in = s.amplitudes();
  auto dst = out.amplitudes();
  for (std::size_t i = 0; i < L; ++i) {
    dst[(i + fwd) % L].up = in[i].up * up_phase;
    dst[(i + bwd) % L].down = in[i].down * down_phase;
  }
  return out;
}

inline WalkState shift(const WalkState& s, ShiftDirection direction = ShiftDirection::forward) {
  return shift(s, s.branch_index(), direction);
}

/// One walk step: coin first, then shift.
inline WalkState step(const WalkState& s, const CoinOperator& c) {
  WalkState out = shift(coin_flip(s, c));
  out.set_step_count(s.step_count() + 1);
  return out;
}

/// Undoes `step(s, c)`.
inline WalkState inverse_step(const WalkState& s, const CoinOperator& c) {
  WalkState out = coin_flip(shift(s, ShiftDirection::backward), c.adjoint());
  out.set_step_count(s.step_count() > 0 ? s.step_count() - 1 : 0);
  return out;
}

}  // namespace su11walk
