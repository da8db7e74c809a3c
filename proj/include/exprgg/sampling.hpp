#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>

#include "exprgg/core_model.hpp"

namespace exprgg {

/// Generator used for every cloud: std::mt19937_64, whose output sequence is
/// fixed by the C++ standard, seeded directly with the 64-bit seed.
using Engine = std::mt19937_64;

/// Maps one 64-bit engine output to a uniform on (0, 1]:
/// ((bits >> 11) + 1) * 2^-53. Never returns 0.
inline double uniform_open_closed(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

/// Inverse CDF of Exp(lambda): -ln(u) / lambda for u in (0, 1].
double exponential_from_uniform(double u, double lambda);

/// n points with i.i.d. Exp(lambda) coordinates, drawn point-major from
/// Engine(seed). Bit-identical for identical arguments.
PointCloud sample_exponential_cloud(std::size_t n, std::size_t d, double lambda,
                                    std::uint64_t seed);

/// SplitMix64 finalizer applied to base_seed + (index + 1) * 0x9E3779B97F4A7C15.
/// Injective in index for a fixed base seed.
std::uint64_t derive_replication_seed(std::uint64_t base_seed, std::uint64_t index);

/// Cloud dump: header `# exprgg-cloud v1 n=<n> d=<d> lambda=<l> seed=<s>` then
/// one point per line, d space-separated floats with 17 significant digits.
void write_cloud(std::ostream& out, const PointCloud& cloud);
PointCloud read_cloud(std::istream& in);

}  // namespace exprgg
