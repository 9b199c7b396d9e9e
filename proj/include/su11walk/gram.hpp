#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "su11walk/errors.hpp"
#include "su11walk/frame.hpp"

namespace su11walk {

/// Site overlaps G[m][n] = <site_m | site_n>. Equally spaced sites make G
/// circulant, so only the generator g[d] = G[d][0] is stored.
class GramMatrix {
 public:
  explicit GramMatrix(std::vector<complex> generator) : g_(std::move(generator)) {
    detail::require(!g_.empty(), "GramMatrix: empty generator");
  }

  std::size_t sites() const { return g_.size(); }
  std::span<const complex> generator() const { return g_; }

  complex operator()(std::size_t m, std::size_t n) const {
    const std::size_t L = sites();
    return g_[(m + L - n % L) % L];
  }

  bool is_identity() const {
    return g_[0] == complex(1.0, 0.0) &&
           std::all_of(g_.begin() + 1, g_.end(), [](complex z) { return z == complex(0.0, 0.0); });
  }

  /// y = G x.
  std::vector<complex> apply(std::span<const complex> x) const {
    const std::size_t L = sites();
    detail::require(x.size() == L, "GramMatrix::apply: dimension mismatch");
    std::vector<complex> y(L);
    if (is_identity()) {
      std::copy(x.begin(), x.end(), y.begin());
      return y;
    }
    for (std::size_t m = 0; m < L; ++m) {
      complex acc(0.0, 0.0);
      for (std::size_t n = 0; n < L; ++n) acc += g_[(m + L - n) % L] * x[n];
      y[m] = acc;
    }
    return y;
  }

  /// Dense row-major copy.
  std::vector<complex> dense() const {
    const std::size_t L = sites();
    std::vector<complex> out(L * L);
    for (std::size_t m = 0; m < L; ++m)
      for (std::size_t n = 0; n < L; ++n) out[m * L + n] = (*this)(m, n);
    return out;
  }

  double max_hermiticity_error() const {
    const std::size_t L = sites();
    double err = 0.0;
    for (std::size_t d = 0; d < L; ++d) err = std::max(err, std::abs(g_[d] - std::conj(g_[(L - d) % L])));
    return err;
  }

  double max_diagonal_error() const { return std::abs(g_[0] - 1.0); }

  /// Eigenvalues of a circulant: lambda_j = sum_d g[d] e^{-2 pi i j d / L}
  /// (real parts; the imaginary parts vanish for Hermitian G).
  std::vector<double> eigenvalues() const {
    const std::size_t L = sites();
    std::vector<double> out(L);
    for (std::size_t j = 0; j < L; ++j) {
      complex acc(0.0, 0.0);
      for (std::size_t d = 0; d < L; ++d) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * d) % L) / static_cast<double>(L);
        acc += g_[d] * std::polar(1.0, angle);
      }
      out[j] = acc.real();
    }
    return out;
  }

  double min_eigenvalue() const {
    const auto ev = eigenvalues();
    return *std::min_element(ev.begin(), ev.end());
  }

  /// Throws NumericalError unless G is Hermitian with unit diagonal and PSD.
  void validate(double tol = 1e-12, double psd_tol = 1e-10) const {
    if (max_hermiticity_error() > tol) throw NumericalError("GramMatrix: not Hermitian");
    if (max_diagonal_error() > tol) throw NumericalError("GramMatrix: diagonal is not 1");
    if (min_eigenvalue() < -psd_tol) throw NumericalError("GramMatrix: not positive semidefinite");
  }

 private:
  std::vector<complex> g_;
};

inline GramMatrix gram(const Frame& frame, std::size_t sites) {
  detail::require(sites >= 1, "gram: need at least one site");
  std::vector<complex> g(sites);
  for (std::size_t d = 0; d < sites; ++d) g[d] = frame.overlap(static_cast<long>(d), 0, sites);
  GramMatrix out(std::move(g));
  return out;
}

}  // namespace su11walk
