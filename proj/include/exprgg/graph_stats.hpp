#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "exprgg/core_model.hpp"

namespace exprgg {

/// Degrees of G_n(y) computed per vertex through the grid index. `threads`
/// splits the vertex range across workers (0 = auto); the result does not
/// depend on it. Requires n >= 2.
DegreeSummary degree_summary(const PointCloud& cloud, double y, std::size_t threads = 1);

/// |eps_n / C(n,2) - p(y)|.
double edge_density_gap(const DegreeSummary& summary, const RggConfig& config);

struct DegreeRatios {
  double min_ratio;
  double max_ratio;
};

/// (delta_n / (n y^d), Delta_n / (n y^d)). Throws for y = 0.
DegreeRatios degree_ratios(const DegreeSummary& summary, const RggConfig& config);

/// Edge counts eps_n(y) for every y in an ascending grid, from one pass over
/// the pairs within max(ys). Pairs are found by a sweep along axis 0.
std::vector<std::uint64_t> edge_counts_for_grid(const PointCloud& cloud,
                                                std::span<const double> ys);

}  // namespace exprgg
