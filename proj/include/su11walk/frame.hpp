#pragma once

#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>

#include "su11walk/su11_core.hpp"

namespace su11walk {

/// Site basis of the walker: the L sites sit at theta_n = n * 2pi / L on a circle
/// of coherent states of fixed radius.
class Frame {
 public:
  /// Orthonormal sites: the textbook walk on a cycle.
  struct Ideal {};
  struct HW {
    double alpha_mag = 1.0;
  };
  struct SU11 {
    double k = 0.5;
    double r = 0.0;
  };
  using Variant = std::variant<Ideal, HW, SU11>;

  Frame() = default;
  static Frame ideal() { return Frame(Ideal{}); }
  static Frame hw(double alpha_mag) {
    detail::require(std::isfinite(alpha_mag) && alpha_mag >= 0.0, "Frame::hw: |alpha| must be finite and >= 0");
    return Frame(HW{alpha_mag});
  }
  static Frame su11(double k, double r) {
    SU11Params(k, r).validate();
    return Frame(SU11{k, r});
  }

  const Variant& variant() const { return v_; }
  bool is_ideal() const { return std::holds_alternative<Ideal>(v_); }

  /// Vacuum eigenvalue of the shift generator: k for SU(1,1), 0 for the number
  /// operator of HW states. Sets the coin-branch phase of the physical shift.
  double branch_index() const {
    if (const auto* s = std::get_if<SU11>(&v_)) return s->k;
    return 0.0;
  }

  /// <site_m | site_n> for sites m, n on a circle of `sites` points.
  complex overlap(long m, long n, std::size_t sites) const {
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(sites);
    const long diff = m - n;
    return std::visit(
        [&](const auto& f) -> complex {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Ideal>) {
            const long L = static_cast<long>(sites);
            return ((diff % L) + L) % L == 0 ? complex(1.0, 0.0) : complex(0.0, 0.0);
          } else if constexpr (std::is_same_v<T, HW>) {
            return hw_overlap(f.alpha_mag, normalize_angle(-static_cast<double>(diff) * dtheta));
          } else {
            return su11_overlap(f.k, f.r, normalize_angle(static_cast<double>(diff) * dtheta));
          }
        },
        v_);
  }

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Ideal>) {
            os << "ideal";
          } else if constexpr (std::is_same_v<T, HW>) {
            os << "hw:" << f.alpha_mag;
          } else {
            os << "su11:" << f.k << "," << f.r;
          }
        },
        v_);
    return os.str();
  }

  friend bool operator==(const Frame& a, const Frame& b) {
    if (a.v_.index() != b.v_.index()) return false;
    if (const auto* h = std::get_if<HW>(&a.v_)) return h->alpha_mag == std::get<HW>(b.v_).alpha_mag;
    if (const auto* s = std::get_if<SU11>(&a.v_)) {
      const auto& o = std::get<SU11>(b.v_);
      return s->k == o.k && s->r == o.r;
    }
    return true;
  }

 private:
  explicit Frame(Variant v) : v_(v) {}
  Variant v_{Ideal{}};
};

}  // namespace su11walk
