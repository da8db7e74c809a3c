#pragma once

// Test-only reference computations, written independently of the library
// code paths they check.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace exprgg::testing {

// log C(n, k) via lgamma in extended precision.
inline long double log_choose(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<long double>(n) + 1) - std::lgamma(static_cast<long double>(k) + 1) -
         std::lgamma(static_cast<long double>(n - k) + 1);
}

inline long double binomial_pmf(std::size_t n, long double p, std::size_t k) {
  if (p == 0) return k == 0 ? 1.0L : 0.0L;
  if (p == 1) return k == n ? 1.0L : 0.0L;
  return std::exp(log_choose(n, k) + k * std::log(p) + (n - k) * std::log1p(-p));
}

/// P[Bin(n,p) >= k] by direct summation.
inline long double binomial_upper_tail(std::size_t n, long double p, std::size_t k) {
  long double s = 0;
  for (std::size_t j = k; j <= n; ++j) s += binomial_pmf(n, p, j);
  return s;
}

/// P[Bin(n,p) <= k] by direct summation.
inline long double binomial_lower_tail(std::size_t n, long double p, std::size_t k) {
  long double s = 0;
  for (std::size_t j = 0; j <= k && j <= n; ++j) s += binomial_pmf(n, p, j);
  return s;
}

/// Chebyshev distance by an explicit scalar loop.
inline double scalar_linf(std::span<const double> p, std::span<const double> q) {
  double best = 0;
  for (std::size_t k = 0; k < p.size(); ++k) best = std::fmax(best, std::fabs(p[k] - q[k]));
  return best;
}

/// Degrees by a pairwise scan over a flat point-major buffer.
inline std::vector<std::uint32_t> pairwise_degrees(std::span<const double> coords, std::size_t d,
                                                   double y) {
  const std::size_t n = coords.size() / d;
  std::vector<std::uint32_t> deg(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (scalar_linf(coords.subspan(i * d, d), coords.subspan(j * d, d)) <= y) {
        ++deg[i];
        ++deg[j];
      }
  return deg;
}

}  // namespace exprgg::testing
