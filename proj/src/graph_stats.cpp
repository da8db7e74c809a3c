#include "exprgg/graph_stats.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "exprgg/parallel.hpp"
#include "exprgg/spatial.hpp"
#include "exprgg/theory.hpp"

namespace exprgg {

DegreeSummary degree_summary(const PointCloud& cloud, double y, std::size_t threads) {
  const std::size_t n = cloud.size();
  if (n < 2) throw ValidationError("degree_summary: need n >= 2");
  if (!(y >= 0.0)) throw ValidationError("degree_summary: y must be >= 0");

  std::vector<std::uint32_t> degrees(n);
  if (std::isinf(y)) {
    std::fill(degrees.begin(), degrees.end(), static_cast<std::uint32_t>(n - 1));
    return DegreeSummary(std::move(degrees));
  }

  const auto index = build_grid_index(cloud, query_cell_size(cloud, y));
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  parallel_for(chunks, threads, [&](std::size_t chunk) {
    const std::size_t end = std::min(n, (chunk + 1) * kChunk);
    for (std::size_t i = chunk * kChunk; i < end; ++i) {
      std::uint32_t count = 0;
      index.for_each_neighbor(i, y, [&](std::uint32_t) { ++count; });
      degrees[i] = count;
    }
  });

  assert(std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0}) % 2 == 0);
  return DegreeSummary(std::move(degrees));
}

double edge_density_gap(const DegreeSummary& summary, const RggConfig& config) {
  const double n = static_cast<double>(summary.size());
  const double pairs = n * (n - 1.0) / 2.0;
  const double density = static_cast<double>(summary.edge_count()) / pairs;
  return std::abs(density - pair_connect_prob(config.y, config.lambda, config.d));
}

DegreeRatios degree_ratios(const DegreeSummary& summary, const RggConfig& config) {
  if (!(config.y > 0.0))
    throw ValidationError("degree_ratios: y must be > 0 (ratio undefined at y = 0)");
  const double scale =
      static_cast<double>(summary.size()) * std::pow(config.y, static_cast<double>(config.d));
  return {summary.min_degree() / scale, summary.max_degree() / scale};
}

std::vector<std::uint64_t> edge_counts_for_grid(const PointCloud& cloud,
                                                std::span<const double> ys) {
  if (ys.empty()) return {};
  if (!std::is_sorted(ys.begin(), ys.end()))
    throw ValidationError("edge_counts_for_grid: y grid must be ascending");
  if (!(ys.front() >= 0.0)) throw ValidationError("edge_counts_for_grid: y must be >= 0");

  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dimension();
  const double y_max = ys.back();
  const double* coords = cloud.coords().data();

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return coords[std::size_t{a} * d] < coords[std::size_t{b} * d];
  });

  // first_at[g] counts pairs whose distance is first covered by ys[g].
  std::vector<std::uint64_t> first_at(ys.size(), 0);
  for (std::size_t a = 0; a < n; ++a) {
    const double* p = coords + std::size_t{order[a]} * d;
    for (std::size_t b = a + 1; b < n; ++b) {
      const double* q = coords + std::size_t{order[b]} * d;
      if (q[0] - p[0] > y_max) break;
      const double dist = detail::linf_unchecked(p, q, d);
      if (dist <= y_max) {
        const auto g = std::lower_bound(ys.begin(), ys.end(), dist) - ys.begin();
        ++first_at[static_cast<std::size_t>(g)];
      }
    }
  }
  std::partial_sum(first_at.begin(), first_at.end(), first_at.begin());
  return first_at;
}

}  // namespace exprgg
