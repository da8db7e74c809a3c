#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace exprgg {

struct VerifyCase {
  std::size_t n;
  std::size_t d;
  double lambda;
  double y;
  std::uint64_t seed;
};

struct VerifyReport {
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  std::vector<std::string> details;  // one line per mismatching case

  bool ok() const { return mismatches == 0; }
};

/// Case `index` of a sweep: d cycles through {1,2,3}, n is uniform on
/// [2, max_n], lambda log-uniform on [0.5, 2] and y log-uniform on
/// [1e-3, 2] / lambda, all drawn from derive_replication_seed(seed, index).
VerifyCase verify_case(std::uint64_t seed, std::size_t index, std::size_t max_n);

/// Compares grid-index edges and degrees with the brute-force oracle on
/// `cases` random instances. Exact equality, no tolerance.
VerifyReport run_oracle_sweep(std::size_t cases, std::size_t max_n, std::uint64_t seed,
                              std::size_t threads = 1);

}  // namespace exprgg
