#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <cmath>
#include <random>
#include <vector>

#include "exprgg/sampling.hpp"
#include "exprgg/spatial.hpp"
#include "oracles.hpp"

using namespace exprgg;

TEST_CASE("linf_distance examples") {
  const std::vector<double> origin{0, 0}, p{1, 2};
  CHECK(linf_distance(origin, p) == 2.0);
  CHECK(linf_distance(p, p) == 0.0);
  CHECK(linf_distance(p, origin) == linf_distance(origin, p));
  const std::vector<double> q{1, 2, 3};
  CHECK_THROWS_AS(linf_distance(p, q), ValidationError);
}

TEST_CASE("linf_distance agrees with a scalar-loop oracle") {
  std::mt19937_64 rng(3);
  std::exponential_distribution<double> exp1(1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + trial % 3;
    std::vector<double> p(d), q(d);
    for (auto& x : p) x = exp1(rng);
    for (auto& x : q) x = exp1(rng);
    CHECK(linf_distance(p, q) == testing::scalar_linf(p, q));
  }
}

TEST_CASE("metric axioms on random triples") {
  const auto cloud = sample_exponential_cloud(30000, 2, 1.0, 17);
  for (std::size_t t = 0; t < 10000; ++t) {
    const auto a = cloud.point(3 * t), b = cloud.point(3 * t + 1), c = cloud.point(3 * t + 2);
    const double ab = linf_distance(a, b), bc = linf_distance(b, c), ac = linf_distance(a, c);
    REQUIRE(ab >= 0.0);
    REQUIRE(ab == linf_distance(b, a));
    REQUIRE((ab == 0.0) == std::equal(a.begin(), a.end(), b.begin()));
    REQUIRE(ac <= ab + bc + 1e-12);
  }
}

TEST_CASE("grid index cell placement") {
  SUBCASE("single point at the origin") {
    const PointCloud cloud(3, {0, 0, 0}, 0, 1.0);
    const auto index = build_grid_index(cloud, 1.0);
    REQUIRE(index.cell_count() == 1);
    const auto key = index.cell_key(0);
    CHECK(std::all_of(key.begin(), key.end(), [](auto k) { return k == 0; }));
    CHECK(index.cell_members(0).size() == 1);
    CHECK(index.cell_members(0)[0] == 0);
  }
  SUBCASE("two points in adjacent cells") {
    const PointCloud cloud(1, {0.5, 1.5}, 0, 1.0);
    const auto index = build_grid_index(cloud, 1.0);
    REQUIRE(index.cell_count() == 2);
    CHECK(index.cell_key(0)[0] == 0);
    CHECK(index.cell_key(1)[0] == 1);
    CHECK(index.cell_of(0) == 0);
    CHECK(index.cell_of(1) == 1);
  }
  SUBCASE("rejects bad cell sizes") {
    const PointCloud cloud(1, {0.5, 1e300}, 0, 1.0);
    CHECK_THROWS_AS(build_grid_index(cloud, 0.0), ValidationError);
    CHECK_THROWS_AS(build_grid_index(cloud, -1.0), ValidationError);
    CHECK_THROWS_AS(build_grid_index(cloud, 1e-300), ValidationError);
  }
}

TEST_CASE("every vertex appears in exactly one cell, at floor(x / cell_size)") {
  const auto cloud = sample_exponential_cloud(10000, 2, 1.0, 5);
  const double cell = 0.05;
  const auto index = build_grid_index(cloud, cell);
  std::vector<std::uint32_t> seen;
  for (std::size_t c = 0; c < index.cell_count(); ++c) {
    const auto key = index.cell_key(c);
    for (auto v : index.cell_members(c)) {
      seen.push_back(v);
      for (std::size_t k = 0; k < 2; ++k)
        CHECK(key[k] == static_cast<std::int64_t>(std::floor(cloud.point(v)[k] / cell)));
    }
  }
  std::sort(seen.begin(), seen.end());
  std::vector<std::uint32_t> all(cloud.size());
  std::iota(all.begin(), all.end(), 0u);
  CHECK(seen == all);
}

TEST_CASE("neighbors_within boundary and error cases") {
  SUBCASE("distance exactly y is included") {
    const PointCloud cloud(2, {0.25, 0.5, 0.75, 0.5}, 0, 1.0);
    const auto index = build_grid_index(cloud, 0.5);
    CHECK(neighbors_within(index, 0, 0.5) == std::vector<std::uint32_t>{1});
    CHECK(neighbors_within(index, 1, 0.5) == std::vector<std::uint32_t>{0});
  }
  SUBCASE("y = 0 with distinct points") {
    const auto cloud = sample_exponential_cloud(200, 2, 1.0, 4);
    const auto index = build_grid_index(cloud, 0.1);
    for (std::size_t i = 0; i < cloud.size(); ++i) CHECK(neighbors_within(index, i, 0.0).empty());
  }
  SUBCASE("preconditions") {
    const auto cloud = sample_exponential_cloud(10, 1, 1.0, 4);
    const auto index = build_grid_index(cloud, 0.1);
    CHECK_THROWS_AS(neighbors_within(index, 10, 0.1), ValidationError);
    CHECK_THROWS_AS(neighbors_within(index, 0, 0.2), ValidationError);
  }
}

TEST_CASE("brute_force_edges examples") {
  const PointCloud line(1, {0.0, 0.5, 1.2}, 0, 1.0);
  // Distances are 0.5, 0.7 and 1.2.
  CHECK(brute_force_edges(line, 0.6) == std::vector<Edge>{{0, 1}});
  CHECK(brute_force_edges(line, 0.7) == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(grid_edges(line, 0.7) == std::vector<Edge>{{0, 1}, {1, 2}});
  const PointCloud pair(1, {0.0, 1.0}, 0, 1.0);
  CHECK(brute_force_edges(pair, 0.5).empty());
}

TEST_CASE("grid queries equal the brute-force oracle on random clouds") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> n_dist(2, 400);
  std::uniform_real_distribution<double> log_y(std::log(1e-3), std::log(2.0));
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const std::size_t n = n_dist(rng);
    const double y = std::exp(log_y(rng));
    const auto cloud = sample_exponential_cloud(n, d, 1.0, rng());

    // Standard build: cell_size = y.
    const auto index = build_grid_index(cloud, y);
    const auto oracle = brute_force_edges(cloud, y);
    std::vector<std::vector<std::uint32_t>> expected(n);
    for (const auto& [i, j] : oracle) {
      expected[i].push_back(j);
      expected[j].push_back(i);
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::sort(expected[i].begin(), expected[i].end());
      const auto got = neighbors_within(index, i, y);
      REQUIRE(got == expected[i]);
      REQUIRE(std::find(got.begin(), got.end(), i) == got.end());
    }
    REQUIRE(grid_edges(cloud, y) == oracle);
  }
}

TEST_CASE("query_cell_size covers y with margin") {
  const auto cloud = sample_exponential_cloud(100, 2, 1.0, 1);
  CHECK(query_cell_size(cloud, 0.3) > 0.3);
  CHECK(query_cell_size(cloud, 0.0) > 0.0);
  // Tiny radii fall back to a cell that keeps cell coordinates small.
  CHECK(query_cell_size(cloud, 1e-15) > 1e-12);
  const PointCloud origin(1, {0.0, 0.0}, 0, 1.0);
  CHECK(query_cell_size(origin, 0.0) == 1.0);
}
