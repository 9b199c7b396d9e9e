#pragma once

#include <cmath>
#include <numbers>

namespace su11walk {

/// Maps an angle into (-pi, pi].
inline double normalize_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::remainder(theta, two_pi);  // [-pi, pi]
  if (t <= -std::numbers::pi) t += two_pi;
  return t;
}

/// Shortest signed difference a - b, in (-pi, pi].
inline double angle_difference(double a, double b) { return normalize_angle(a - b); }

}  // namespace su11walk
