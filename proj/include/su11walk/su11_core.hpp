#pragma once

// Closed-form kernels for Heisenberg-Weyl and SU(1,1) coherent states:
// pairwise overlaps, phase-space / hyperboloid geometry, the expansion of
// |k, zeta> over the discrete-series ladder |k, m>, and the index maps of the
// one-mode and two-mode bosonic realizations.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "su11walk/angles.hpp"
#include "su11walk/errors.hpp"

namespace su11walk {

using complex = std::complex<double>;

/// SU(1,1) coherent-state label: Bargmann index k and zeta = r e^{i theta}.
struct SU11Params {
  double k = 0.5;
  double r = 0.0;
  double theta = 0.0;

  SU11Params() = default;
  SU11Params(double k_, double r_, double theta_ = 0.0) : k(k_), r(r_), theta(normalize_angle(theta_)) {
    validate();
  }

  void validate() const {
    detail::require(std::isfinite(k) && std::isfinite(r) && std::isfinite(theta),
                    "SU11Params: non-finite parameter");
    detail::require(k > 0.0, "SU11Params: Bargmann index k must be positive");
    detail::require(r >= 0.0, "SU11Params: squeeze r must be non-negative");
  }

  complex zeta() const { return std::polar(r, theta); }
};

/// Heisenberg-Weyl coherent-state label alpha = |alpha| e^{i theta}.
struct HWParams {
  double alpha_mag = 0.0;
  double theta = 0.0;

  HWParams() = default;
  HWParams(double alpha_mag_, double theta_ = 0.0) : alpha_mag(alpha_mag_), theta(normalize_angle(theta_)) {
    validate();
  }

  void validate() const {
    detail::require(std::isfinite(alpha_mag) && std::isfinite(theta), "HWParams: non-finite parameter");
    detail::require(alpha_mag >= 0.0, "HWParams: |alpha| must be non-negative");
  }

  complex alpha() const { return std::polar(alpha_mag, theta); }
};

/// Expectation values (<K1>, <K2>, <K0>) of a coherent state; lies on the
/// upper sheet K0^2 - K1^2 - K2^2 = k^2.
struct HyperboloidPoint {
  double K1 = 0.0;
  double K2 = 0.0;
  double K0 = 0.0;

  double minkowski_norm2() const { return K0 * K0 - K1 * K1 - K2 * K2; }
};

struct PhasePlanePoint {
  double x = 0.0;
  double p = 0.0;
};

/// Coefficients c_0..c_M of |k, zeta> over |k, m>.
struct LadderCoefficients {
  double k = 0.5;
  std::size_t cutoff = 0;
  std::vector<complex> c;
  /// Geometric upper bound on sum_{m > cutoff} |c_m|^2.
  double tail_bound = 0.0;

  /// 1 - sum |c_m|^2 as accumulated in floating point (clamped at 0).
  double missing_norm() const {
    double s = 0.0;
    for (const auto& v : c) s += std::norm(v);
    return std::max(0.0, 1.0 - s);
  }
};

/// <k, zeta_m | k, zeta_n> for two states sharing (k, r), with
/// dtheta = theta_m - theta_n:  [cosh^2 r - e^{i dtheta} sinh^2 r]^{-2k}.
inline complex su11_overlap(double k, double r, double dtheta) {
  detail::require(std::isfinite(k) && std::isfinite(r) && std::isfinite(dtheta),
                  "su11_overlap: non-finite input");
  detail::require(k > 0.0, "su11_overlap: k must be positive");
  detail::require(r >= 0.0, "su11_overlap: r must be non-negative");
  // 1 + sinh^2 r (1 - e^{i dtheta}); avoids cancellation of cosh^2 - sinh^2.
  const double s2 = std::sinh(r) * std::sinh(r);
  const complex base = 1.0 + s2 * (1.0 - std::polar(1.0, dtheta));
  if (base == complex(0.0, 0.0)) throw NumericalError("su11_overlap: vanishing base");
  return std::exp(-2.0 * k * std::log(base));
}

/// <alpha_m | alpha_n> for |alpha_m| = |alpha_n|, with dtheta = theta_n - theta_m:
/// exp[-|alpha|^2 (1 - e^{i dtheta})].
inline complex hw_overlap(double alpha_mag, double dtheta) {
  detail::require(std::isfinite(alpha_mag) && std::isfinite(dtheta), "hw_overlap: non-finite input");
  detail::require(alpha_mag >= 0.0, "hw_overlap: |alpha| must be non-negative");
  const double a2 = alpha_mag * alpha_mag;
  return std::exp(-a2 * (1.0 - std::polar(1.0, dtheta)));
}

inline HyperboloidPoint hyperboloid_point(const SU11Params& p) {
  p.validate();
  const double s = std::sinh(2.0 * p.r);
  return {p.k * s * std::cos(p.theta), p.k * s * std::sin(p.theta), p.k * std::cosh(2.0 * p.r)};
}

/// Poincare-disk image tanh(r) e^{i theta}.
inline complex disk_point(const SU11Params& p) {
  p.validate();
  return std::polar(std::tanh(p.r), p.theta);
}

/// Stereographic projection of a hyperboloid point from (0, 0, -k).
inline complex stereographic(const HyperboloidPoint& h, double k) {
  return complex(h.K1, h.K2) / (k + h.K0);
}

inline PhasePlanePoint hw_center(const HWParams& p) {
  p.validate();
  const double radius = std::numbers::sqrt2 * p.alpha_mag;
  return {radius * std::cos(p.theta), radius * std::sin(p.theta)};
}

namespace detail {

// log cosh r without overflow for large r.
inline double log_cosh(double r) { return r + std::log1p(std::exp(-2.0 * r)) - std::numbers::ln2; }

// Walks log|c_m|^2 = -4k log cosh r + log Gamma(2k+m)/(m! Gamma(2k)) + 2m log tanh r
// forward by the ratio (2k+m)/(m+1) tanh^2 r.
class LadderWeightRecurrence {
 public:
  LadderWeightRecurrence(double k, double r)
      : k_(k), log_t2_(r > 0.0 ? 2.0 * std::log(std::tanh(r)) : -std::numeric_limits<double>::infinity()),
        t2_(std::tanh(r) * std::tanh(r)), log_w_(-4.0 * k * log_cosh(r)) {}

  std::size_t index() const { return m_; }
  double log_weight() const { return log_w_; }

  void advance() {
    log_w_ += log_t2_ + std::log((2.0 * k_ + static_cast<double>(m_)) / static_cast<double>(m_ + 1));
    ++m_;
  }

  /// Bound on sum_{j > m} |c_j|^2 given the current index m.
  double tail_bound() const {
    if (t2_ == 0.0) return 0.0;
    const double m = static_cast<double>(m_);
    const double q = t2_ * std::max(1.0, (2.0 * k_ + m) / (m + 1.0));
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    return std::exp(log_w_) * q / (1.0 - q);
  }

 private:
  double k_;
  double log_t2_;
  double t2_;
  double log_w_;
  std::size_t m_ = 0;
};

}  // namespace detail

/// Smallest ladder cutoff M whose geometric tail bound is below `tail_tolerance`.
inline std::size_t required_cutoff(double k, double r, double tail_tolerance = 1e-12,
                                   std::size_t max_cutoff = 1'000'000) {
  detail::require(k > 0.0 && r >= 0.0 && std::isfinite(r), "required_cutoff: invalid (k, r)");
  detail::require(tail_tolerance > 0.0, "required_cutoff: tolerance must be positive");
  detail::LadderWeightRecurrence rec(k, r);
  while (rec.tail_bound() >= tail_tolerance) {
    if (rec.index() >= max_cutoff)
      throw TruncationError("required_cutoff: no cutoff below limit meets tolerance", rec.tail_bound(),
                            max_cutoff);
    rec.advance();
  }
  return rec.index();
}

/// Expansion of |k, zeta> on |k, 0..cutoff>:
///   c_m = (1 - t^2)^k sqrt(Gamma(2k+m) / (m! Gamma(2k))) tau^m,  tau = tanh(r) e^{-i theta}.
/// The conjugate phase follows from the displacement exp(zeta* K+ - zeta K-); with
/// it <K2> = +k sinh 2r sin theta and sum_m c_m(theta_1)^* c_m(theta_2) tends to
/// su11_overlap(k, r, theta_1 - theta_2).
inline LadderCoefficients disk_coefficients(const SU11Params& p, std::size_t cutoff) {
  p.validate();
  LadderCoefficients out;
  out.k = p.k;
  out.cutoff = cutoff;
  out.c.resize(cutoff + 1);
  detail::LadderWeightRecurrence rec(p.k, p.r);
  for (std::size_t m = 0;; ++m) {
    const double mag = std::exp(0.5 * rec.log_weight());
    out.c[m] = mag == 0.0 ? complex(0.0, 0.0) : std::polar(mag, -static_cast<double>(m) * p.theta);
    if (m == cutoff) break;
    rec.advance();
  }
  out.tail_bound = rec.tail_bound();
  return out;
}

/// As above, but signals TruncationError when the tail bound exceeds `tail_tolerance`.
inline LadderCoefficients disk_coefficients(const SU11Params& p, std::size_t cutoff, double tail_tolerance) {
  auto out = disk_coefficients(p, cutoff);
  if (!(out.tail_bound < tail_tolerance)) {
    throw TruncationError("disk_coefficients: cutoff " + std::to_string(cutoff) +
                              " leaves tail bound above tolerance",
                          out.tail_bound, required_cutoff(p.k, p.r, tail_tolerance));
  }
  return out;
}

namespace detail {
inline bool near(double a, double b) { return std::abs(a - b) < 1e-12; }
}  // namespace detail

/// One-mode realization K+ = (a^dagger)^2 / 2: |k, m> = |2(m + k - 1/4)>_a.
inline std::size_t map_one_mode(double k, std::size_t m) {
  if (detail::near(k, 0.25)) return 2 * m;
  if (detail::near(k, 0.75)) return 2 * m + 1;
  throw InvalidArgument("map_one_mode: one-mode realization requires k = 1/4 or 3/4");
}

/// Two-mode realization K+ = a^dagger b^dagger: |k, m> = |m + 2k - 1>_a |m>_b.
inline std::pair<std::size_t, std::size_t> map_two_mode(double k, std::size_t m) {
  const double twice = 2.0 * k;
  const double rounded = std::round(twice);
  if (!(rounded >= 1.0 && detail::near(twice, rounded)))
    throw InvalidArgument("map_two_mode: two-mode realization requires k in {1/2, 1, 3/2, ...}");
  return {m + static_cast<std::size_t>(rounded) - 1, m};
}

}  // namespace su11walk
