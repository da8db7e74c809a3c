#pragma once

// l-infinity metric and fixed-radius neighbour queries over a PointCloud.
//
// GridIndex buckets vertices into axis-aligned cells of side cell_size and
// answers "all j != i with ||X_i - X_j|| <= y" by scanning the 3^d cells
// around i's cell. brute_force_edges is the O(n^2) oracle it is tested
// against; both use the same floating-point comparison, so results agree
// exactly rather than up to a tolerance.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "exprgg/core_model.hpp"

namespace exprgg {

/// max_k |p_k - q_k|. Throws ValidationError if the dimensions differ.
double linf_distance(std::span<const double> p, std::span<const double> q);

namespace detail {
inline double linf_unchecked(const double* p, const double* q, std::size_t d) {
  double m = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double diff = p[k] > q[k] ? p[k] - q[k] : q[k] - p[k];
    if (diff > m) m = diff;
  }
  return m;
}
}  // namespace detail

/// Immutable uniform-grid index. Holds a pointer to the cloud it was built
/// from; the cloud must outlive the index.
class GridIndex {
 public:
  GridIndex(const PointCloud& cloud, double cell_size);

  double cell_size() const { return cell_size_; }
  const PointCloud& cloud() const { return *cloud_; }
  std::size_t cell_count() const { return cell_begin_.size() - 1; }

  /// Integer coordinates of cell c (d entries). Cells are ordered
  /// lexicographically by these coordinates.
  std::span<const std::int64_t> cell_key(std::size_t c) const {
    const auto d = cloud_->dimension();
    return {cell_keys_.data() + c * d, d};
  }
  /// Vertex ids stored in cell c, ascending.
  std::span<const std::uint32_t> cell_members(std::size_t c) const {
    return {order_.data() + cell_begin_[c], cell_begin_[c + 1] - cell_begin_[c]};
  }
  std::size_t cell_of(std::size_t vertex) const { return vertex_cell_[vertex]; }
  std::optional<std::size_t> find_cell(std::span<const std::int64_t> key) const;

  /// Calls fn(j) for every j != i with linf(X_i, X_j) <= y. Visit order is
  /// cell-lexicographic, then ascending id. Requires y <= cell_size.
  template <typename Fn>
  void for_each_neighbor(std::size_t i, double y, Fn&& fn) const;

 private:
  void check_query(std::size_t i, double y) const;

  const PointCloud* cloud_;
  double cell_size_;
  std::vector<std::int64_t> cell_keys_;
  std::vector<std::uint32_t> cell_begin_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> vertex_cell_;
};

/// Builds a grid with the given cell side. Throws on cell_size <= 0 or when a
/// coordinate / cell_size ratio would overflow the 64-bit cell coordinates.
GridIndex build_grid_index(const PointCloud& cloud, double cell_size);

/// Cell side used by the library's own queries at radius y. It is at least
/// y * (1 + 2^-20) and keeps every cell coordinate below 2^30, which leaves
/// more margin than the rounding in x / cell_size can consume, so a neighbour
/// at distance <= y is always within one cell per axis.
double query_cell_size(const PointCloud& cloud, double y);

/// Sorted ids of { j != i : linf(X_i, X_j) <= y }. Throws if i is out of
/// range or y exceeds the index's cell size.
std::vector<std::uint32_t> neighbors_within(const GridIndex& index, std::size_t i,
                                            double y);

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// Every pair (i, j), i < j, with linf(X_i, X_j) <= y, by pairwise scan.
/// Sorted lexicographically.
std::vector<Edge> brute_force_edges(const PointCloud& cloud, double y);

/// The same edge set produced through the grid index.
std::vector<Edge> grid_edges(const PointCloud& cloud, double y);

// ---------------------------------------------------------------------------

template <typename Fn>
void GridIndex::for_each_neighbor(std::size_t i, double y, Fn&& fn) const {
  check_query(i, y);
  const std::size_t d = cloud_->dimension();
  const double* xi = cloud_->point(i).data();
  const auto home = cell_key(vertex_cell_[i]);

  // Odometer over offsets in {-1, 0, 1}^d.
  std::int64_t offset_buf[16];
  std::int64_t key_buf[16];
  std::vector<std::int64_t> offset_heap, key_heap;
  std::int64_t* offset = offset_buf;
  std::int64_t* key = key_buf;
  if (d > 16) {
    offset_heap.resize(d);
    key_heap.resize(d);
    offset = offset_heap.data();
    key = key_heap.data();
  }
  for (std::size_t k = 0; k < d; ++k) offset[k] = -1;

  const auto* coords = cloud_->coords().data();
  while (true) {
    for (std::size_t k = 0; k < d; ++k) key[k] = home[k] + offset[k];
    if (auto c = find_cell({key, d})) {
      for (auto j : cell_members(*c)) {
        if (j == i) continue;
        if (detail::linf_unchecked(xi, coords + std::size_t{j} * d, d) <= y) fn(j);
      }
    }
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (offset[k] < 1) {
        ++offset[k];
        break;
      }
      offset[k] = -1;
      if (k == 0) return;
    }
  }
}

}  // namespace exprgg
