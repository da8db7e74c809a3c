#include "exprgg/verify.hpp"

#include <algorithm>
#include <cmath>

#include "exprgg/format.hpp"
#include "exprgg/graph_stats.hpp"
#include "exprgg/parallel.hpp"
#include "exprgg/sampling.hpp"
#include "exprgg/spatial.hpp"

namespace exprgg {

VerifyCase verify_case(std::uint64_t seed, std::size_t index, std::size_t max_n) {
  if (max_n < 2) throw ValidationError("verify: max-n must be >= 2");
  const std::uint64_t case_seed = derive_replication_seed(seed, index);
  Engine engine(case_seed);
  auto uniform = [&] { return uniform_open_closed(engine()); };
  VerifyCase c;
  c.d = 1 + index % 3;
  c.n = 2 + static_cast<std::size_t>(uniform() * static_cast<double>(max_n - 1));
  if (c.n > max_n) c.n = max_n;
  c.lambda = 0.5 * std::pow(4.0, uniform());
  c.y = 1e-3 * std::pow(2e3, uniform()) / c.lambda;
  c.seed = derive_replication_seed(case_seed, 0);
  return c;
}

VerifyReport run_oracle_sweep(std::size_t cases, std::size_t max_n, std::uint64_t seed,
                              std::size_t threads) {
  if (cases == 0) throw ValidationError("verify: cases must be >= 1");
  std::vector<std::string> failures(cases);
  parallel_for(cases, threads, [&](std::size_t k) {
    const auto c = verify_case(seed, k, max_n);
    const auto cloud = sample_exponential_cloud(c.n, c.d, c.lambda, c.seed);
    const auto oracle = brute_force_edges(cloud, c.y);
    const auto fast = grid_edges(cloud, c.y);

    std::vector<std::uint32_t> oracle_degrees(c.n, 0);
    for (const auto& [i, j] : oracle) {
      ++oracle_degrees[i];
      ++oracle_degrees[j];
    }
    const auto summary = degree_summary(cloud, c.y);
    const bool degrees_match = std::equal(oracle_degrees.begin(), oracle_degrees.end(),
                                          summary.degrees().begin(), summary.degrees().end());
    if (oracle != fast || !degrees_match) {
      failures[k] = "case " + std::to_string(k) + ": n=" + std::to_string(c.n) +
                    " d=" + std::to_string(c.d) + " lambda=" + detail::fmt17(c.lambda) +
                    " y=" + detail::fmt17(c.y) + " brute=" + std::to_string(oracle.size()) +
                    " grid=" + std::to_string(fast.size()) +
                    (degrees_match ? "" : " (degree mismatch)");
    }
  });

  VerifyReport report;
  report.cases = cases;
  for (auto& f : failures) {
    if (f.empty()) continue;
    ++report.mismatches;
    report.details.push_back(std::move(f));
  }
  return report;
}

}  // namespace exprgg
