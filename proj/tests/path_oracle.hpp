#pragma once

// Exhaustive path sum for the Hadamard walk on orthonormal sites: every
// sequence of coin outcomes is enumerated and its amplitude accumulated at the
// endpoint. Independent of the engine's shift/coin machinery.

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>

namespace su11walk::testing {

/// Site probabilities after `steps` Hadamard steps from `site0` with coin
/// (a_up, a_down); up moves +1, down moves -1. With `cycle` > 0 endpoints are
/// folded into [-cycle/2, cycle/2) before amplitudes are added; 0 means no wrap.
inline std::map<long, double> enumerate_paths(std::size_t steps, std::complex<double> a_up,
                                              std::complex<double> a_down, long site0 = 0,
                                              std::size_t cycle = 0) {
  const double h = 1.0 / std::numbers::sqrt2;
  // amplitude[(site, coin)] accumulated over all 2^steps outcome sequences
  std::map<std::pair<long, int>, std::complex<double>> amp;
  for (unsigned long path = 0; path < (1ul << steps); ++path) {
    for (int start = 0; start < 2; ++start) {
      std::complex<double> a = start == 0 ? a_up : a_down;
      if (a == 0.0) continue;
      int coin = start;
      long site = site0;
      for (std::size_t j = 0; j < steps; ++j) {
        const int next = static_cast<int>((path >> j) & 1ul);  // 0 = up, 1 = down
        a *= (coin == 1 && next == 1) ? -h : h;                // Hadamard entry H[next][coin]
        coin = next;
        site += coin == 0 ? 1 : -1;
      }
      if (cycle > 0) {
        const long L = static_cast<long>(cycle);
        site = ((site + L / 2) % L + L) % L - L / 2;
      }
      amp[{site, coin}] += a;
    }
  }
  std::map<long, double> P;
  for (const auto& [key, a] : amp) P[key.first] += std::norm(a);
  return P;
}

}  // namespace su11walk::testing
