#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "su11walk/errors.hpp"

namespace su11walk {

using complex = std::complex<double>;

/// Coin amplitudes (c_up, c_down) in the sigma_z basis.
struct CoinPair {
  complex up{0.0, 0.0};
  complex down{0.0, 0.0};

  double norm2() const { return std::norm(up) + std::norm(down); }
  friend bool operator==(const CoinPair&, const CoinPair&) = default;
};

/// 2x2 operator on the coin, row-major in the (up, down) basis.
struct CoinOperator {
  std::array<complex, 4> m{complex(1.0), complex(0.0), complex(0.0), complex(1.0)};

  complex operator()(int row, int col) const { return m[static_cast<std::size_t>(2 * row + col)]; }

  CoinPair apply(const CoinPair& c) const {
    return {m[0] * c.up + m[1] * c.down, m[2] * c.up + m[3] * c.down};
  }

  CoinOperator adjoint() const {
    return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
  }

  friend CoinOperator operator*(const CoinOperator& a, const CoinOperator& b) {
    return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
             a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
  }

  complex determinant() const { return m[0] * m[3] - m[1] * m[2]; }

  bool is_unitary(double tol = 1e-12) const {
    const CoinOperator p = (*this) * adjoint();
    return std::abs(p.m[0] - 1.0) <= tol && std::abs(p.m[1]) <= tol && std::abs(p.m[2]) <= tol &&
           std::abs(p.m[3] - 1.0) <= tol;
  }
};

inline CoinOperator identity_coin() { return {}; }

inline CoinOperator hadamard() {
  const double h = 1.0 / std::numbers::sqrt2;
  return {{complex(h), complex(h), complex(h), complex(-h)}};
}

/// Rz(alpha) Ry(beta) Rz(gamma); every SU(2) coin up to a global phase.
inline CoinOperator su2_coin(double alpha, double beta, double gamma) {
  const double c = std::cos(beta / 2.0);
  const double s = std::sin(beta / 2.0);
  const complex ep = std::polar(1.0, -(alpha + gamma) / 2.0);
  const complex em = std::polar(1.0, -(alpha - gamma) / 2.0);
  return {{ep * c, -em * s, std::conj(em) * s, std::conj(ep) * c}};
}

}  // namespace su11walk
