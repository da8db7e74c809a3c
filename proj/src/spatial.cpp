#include "exprgg/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace exprgg {

double linf_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw ValidationError("linf_distance: dimension mismatch (" + std::to_string(p.size()) +
                          " vs " + std::to_string(q.size()) + ")");
  return detail::linf_unchecked(p.data(), q.data(), p.size());
}

namespace {

bool key_less(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

GridIndex::GridIndex(const PointCloud& cloud, double cell_size)
    : cloud_(&cloud), cell_size_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size))
    throw ValidationError("build_grid_index: cell_size must be positive and finite");
  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dimension();
  if (n > UINT32_MAX) throw ValidationError("build_grid_index: too many points");

  constexpr double kMaxCell = 0x1.0p62;
  std::vector<std::int64_t> raw(n * d);
  for (std::size_t k = 0; k < n * d; ++k) {
    const double cell = std::floor(cloud.coords()[k] / cell_size);
    if (!(cell < kMaxCell))
      throw ValidationError("build_grid_index: cell_size too small for coordinate extent");
    raw[k] = static_cast<std::int64_t>(cell);
  }

  auto key_of = [&](std::uint32_t v) {
    return std::span<const std::int64_t>(raw.data() + std::size_t{v} * d, d);
  };
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0u);
  std::stable_sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
    return key_less(key_of(a), key_of(b));
  });

  vertex_cell_.resize(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const auto v = order_[pos];
    if (pos == 0 || key_less(key_of(order_[pos - 1]), key_of(v))) {
      cell_begin_.push_back(static_cast<std::uint32_t>(pos));
      const auto key = key_of(v);
      cell_keys_.insert(cell_keys_.end(), key.begin(), key.end());
    }
    vertex_cell_[v] = static_cast<std::uint32_t>(cell_begin_.size() - 1);
  }
  cell_begin_.push_back(static_cast<std::uint32_t>(n));
}

std::optional<std::size_t> GridIndex::find_cell(std::span<const std::int64_t> key) const {
  std::size_t lo = 0, hi = cell_count();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (key_less(cell_key(mid), key)) lo = mid + 1;
    else hi = mid;
  }
  if (lo < cell_count() && std::ranges::equal(cell_key(lo), key)) return lo;
  return std::nullopt;
}

void GridIndex::check_query(std::size_t i, double y) const {
  if (i >= cloud_->size())
    throw ValidationError("neighbors_within: vertex " + std::to_string(i) +
                          " out of range (n=" + std::to_string(cloud_->size()) + ")");
  if (!(y >= 0.0)) throw ValidationError("neighbors_within: y must be >= 0");
  if (y > cell_size_)
    throw ValidationError("neighbors_within: y exceeds the index cell size; rebuild the index");
}

GridIndex build_grid_index(const PointCloud& cloud, double cell_size) {
  return GridIndex(cloud, cell_size);
}

double query_cell_size(const PointCloud& cloud, double y) {
  const auto coords = cloud.coords();
  const double extent = *std::max_element(coords.begin(), coords.end());
  double s = std::max(y * (1.0 + 0x1.0p-20), extent * 0x1.0p-30);
  if (!(s > 0.0)) s = 1.0;
  return s;
}

std::vector<std::uint32_t> neighbors_within(const GridIndex& index, std::size_t i, double y) {
  std::vector<std::uint32_t> out;
  index.for_each_neighbor(i, y, [&](std::uint32_t j) { out.push_back(j); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> brute_force_edges(const PointCloud& cloud, double y) {
  const std::size_t n = cloud.size();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (linf_distance(cloud.point(i), cloud.point(j)) <= y)
        edges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  return edges;
}

std::vector<Edge> grid_edges(const PointCloud& cloud, double y) {
  const auto index = build_grid_index(cloud, query_cell_size(cloud, y));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    index.for_each_neighbor(i, y, [&](std::uint32_t j) {
      if (j > i) edges.emplace_back(static_cast<std::uint32_t>(i), j);
    });
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace exprgg
