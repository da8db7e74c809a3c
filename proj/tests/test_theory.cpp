#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "exprgg/theory.hpp"
#include "oracles.hpp"

using namespace exprgg;

TEST_CASE("pair_connect_prob") {
  CHECK(pair_connect_prob(0.0, 1.0, 1) == 0.0);
  CHECK(pair_connect_prob(std::log(2.0), 1.0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pair_connect_prob(std::log(2.0), 1.0, 2) == doctest::Approx(0.25).epsilon(1e-15));

  // Small-y asymptote: relative error of (lambda y)^d is about lambda y / 2.
  const double y = 1e-6;
  CHECK(std::abs(pair_connect_prob(y, 1.0, 1) / y - 1.0) < 1e-5);

  CHECK_THROWS_AS(pair_connect_prob(-1.0, 1.0, 1), ValidationError);
  CHECK_THROWS_AS(pair_connect_prob(1.0, 0.0, 1), ValidationError);
}

TEST_CASE("pair_connect_prob agrees with Monte Carlo over independent pairs") {
  std::mt19937_64 rng(5);
  std::exponential_distribution<double> exp1(1.0);
  for (std::size_t d : {1u, 2u}) {
    const double y = std::log(2.0);
    const double p = pair_connect_prob(y, 1.0, d);
    const int trials = 1000000;
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
      double m = 0;
      for (std::size_t k = 0; k < d; ++k) m = std::max(m, std::abs(exp1(rng) - exp1(rng)));
      hits += m <= y;
    }
    const double se = std::sqrt(p * (1 - p) / trials);
    CHECK(std::abs(static_cast<double>(hits) / trials - p) < 3 * se);
  }
}

TEST_CASE("pair_connect_prob monotonicity") {
  double prev = 0;
  for (double y = 0.0; y < 5.0; y += 0.1) {
    const double p = pair_connect_prob(y, 1.0, 2);
    CHECK(p >= prev);
    CHECK(p < 1.0);
    prev = p;
    CHECK(pair_connect_prob(y, 2.0, 2) >= p);
    if (y > 0) CHECK(pair_connect_prob(y, 1.0, 3) <= p);
  }
}

TEST_CASE("h_function") {
  CHECK(h_function(1.0) == 0.0);
  CHECK(h_function(kInfinity) == -1.0);
  CHECK(h_function(std::numbers::e) == doctest::Approx(2.0 / std::numbers::e - 1.0));
  CHECK(h_function(std::numbers::e) == doctest::Approx(-0.264241).epsilon(1e-6));
  CHECK_THROWS_AS(h_function(0.0), ValidationError);
  CHECK_THROWS_AS(h_function(-1.0), ValidationError);

  double prev = -kInfinity;
  for (double t = 0.01; t < 1.0; t += 0.01) {
    const double h = h_function(t);
    CHECK(h < 0.0);
    CHECK(h > prev);
    prev = h;
  }
  prev = 0.0;
  for (double t = 1.05; t < 100.0; t += 0.5) {
    const double h = h_function(t);
    CHECK(h < prev);
    prev = h;
  }
  CHECK(h_function(1e12) > -1.0);
}

TEST_CASE("chernoff bounds: documented values") {
  const auto at_mean = chernoff_upper_tail(10, 0.3, 3.0);
  CHECK(at_mean.value == doctest::Approx(1.0));
  CHECK(at_mean.in_range);
  CHECK(chernoff_lower_tail(10, 0.3, 3.0).value == doctest::Approx(1.0));

  const auto up = chernoff_upper_tail(10, 0.1, 2.0);
  CHECK(up.value == doctest::Approx(0.25 * std::numbers::e).epsilon(1e-12));
  CHECK(up.value == doctest::Approx(0.679570).epsilon(1e-6));
  CHECK(static_cast<double>(testing::binomial_upper_tail(10, 0.1L, 2)) ==
        doctest::Approx(0.263901).epsilon(1e-5));

  const auto lo = chernoff_lower_tail(20, 0.5, 5.0);
  CHECK(lo.value == doctest::Approx(32.0 * std::exp(-5.0)).epsilon(1e-12));
  CHECK(lo.value == doctest::Approx(0.215623).epsilon(1e-5));
  CHECK(static_cast<double>(testing::binomial_lower_tail(20, 0.5L, 5)) ==
        doctest::Approx(0.020695).epsilon(1e-4));

  CHECK_FALSE(chernoff_upper_tail(10, 0.5, 2.0).in_range);
  CHECK_FALSE(chernoff_lower_tail(10, 0.1, 2.0).in_range);
  CHECK_FALSE(chernoff_lower_tail(10, 0.1, 0.0).in_range);
  CHECK_THROWS_AS(chernoff_upper_tail(10, 1.5, 2.0), ValidationError);
}

TEST_CASE("chernoff bounds dominate exact binomial tails on the full grid") {
  int violations = 0, checked = 0;
  double worst_form_gap = 0;
  for (std::size_t n = 5; n <= 50; ++n) {
    for (int pi = 1; pi <= 10; ++pi) {
      const double p = 0.05 * pi;
      const double mean = n * p;
      for (std::size_t k = 0; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        if (kd >= mean) {
          const auto b = chernoff_upper_tail(n, p, kd);
          REQUIRE(b.in_range);
          violations += b.value < testing::binomial_upper_tail(n, p, k);
          ++checked;
        }
        if (k > 0 && kd <= mean) {
          const auto b = chernoff_lower_tail(n, p, kd);
          REQUIRE(b.in_range);
          violations += b.value < testing::binomial_lower_tail(n, p, k);
          ++checked;
        }
        if (k > 0) {
          const double direct = chernoff_upper_tail(n, p, kd).value;
          const double rate = chernoff_rate_form(n, p, kd);
          worst_form_gap = std::max(worst_form_gap, std::abs(direct - rate) / direct);
        }
      }
    }
  }
  CHECK(checked > 10000);
  CHECK(violations == 0);
  CHECK(worst_form_gap <= 1e-12);
}

TEST_CASE("edge_distance") {
  const auto log1 = EdgeDistanceFamily::log_regime(1.0, 1.0, 1);
  CHECK(edge_distance(log1, std::numbers::e) == doctest::Approx(1.0 / std::numbers::e));
  CHECK_THROWS_AS(edge_distance(log1, 1.5), ValidationError);

  for (std::size_t d : {1u, 2u, 3u}) {
    const auto fam = EdgeDistanceFamily::log_regime(2.5, 1.7, d);
    const auto fam2 = EdgeDistanceFamily::log_regime(2.5, 3.4, d);
    for (double n : {10.0, 1e3, 1e6}) {
      const double y = edge_distance(fam, n);
      const double identity = n * std::pow(y, d) / std::log(n);
      CHECK(identity == doctest::Approx(2.5 / std::pow(1.7, d)).epsilon(1e-12));
      CHECK(edge_distance(fam2, n) == doctest::Approx(y / 2).epsilon(1e-15));
    }
  }

  const auto power = EdgeDistanceFamily::power_family(2.0, 1.5, 1.0, 2);
  CHECK(edge_distance(power, 4.0) == doctest::Approx(std::sqrt(2.0 * std::pow(4.0, -1.5))));
  double prev = kInfinity;
  for (double n = 1; n < 1000; n *= 1.7) {
    const double y = edge_distance(power, n);
    CHECK(y < prev);
    prev = y;
  }
}

TEST_CASE("containment_radius") {
  CHECK(containment_radius(std::exp(2.0), 1.0, 2, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  const double base = containment_radius(1e4, 1.3, 3, 0.0);
  CHECK(containment_radius(1e4, 1.3, 3, 0.5) == doctest::Approx(1.5 * base).epsilon(1e-15));
  CHECK_THROWS_AS(containment_radius(1.0, 1.0, 1, 0.0), ValidationError);
  CHECK_THROWS_AS(containment_radius(10.0, 1.0, 1, -0.1), ValidationError);
}

TEST_CASE("a_min root") {
  const auto inf = a_min(kInfinity, 1.0, 1);
  CHECK(inf.a == 1.0);
  CHECK(inf.has_root);

  const auto r4 = a_min(4.0, 1.0, 1);
  CHECK(r4.has_root);
  CHECK(std::abs(root_equation(r4.a) - 0.25) <= 1e-12);
  CHECK(r4.a == doctest::Approx(0.3824).epsilon(1e-4));

  const auto r1 = a_min(1.0, 1.0, 1);
  CHECK_FALSE(r1.has_root);
  CHECK(r1.a == 0.0);
  CHECK_FALSE(a_min(0.5, 1.0, 1).has_root);
  CHECK_FALSE(a_min(0.25, 2.0, 2).has_root);  // lambda^d c = 1
  CHECK(a_min(0.26, 2.0, 2).has_root);

  CHECK_THROWS_AS(a_min(0.0, 1.0, 1), ValidationError);
  CHECK_THROWS_AS(a_min(-1.0, 1.0, 1), ValidationError);
}

TEST_CASE("a_max root") {
  CHECK(a_max(kInfinity, 1.0, 1) == 1.0);
  CHECK(std::abs(a_max(1.0, 1.0, 1) - std::numbers::e) <= 1e-9);
  const double big = a_max(1e6, 1.0, 1);
  CHECK(std::abs(big - (1.0 + std::sqrt(2e-6))) <= 1e-5);
  CHECK(a_max(4.0, 1.0, 1) == doctest::Approx(1.786).epsilon(1e-3));
  // Large right-hand side exercises the bracket growth.
  const double small_c = a_max(1e-3, 1.0, 1);
  CHECK(std::abs(root_equation(small_c) - 1e3) <= 1e-12 * 1e3);
  CHECK_THROWS_AS(a_max(0.0, 1.0, 1), ValidationError);
}

TEST_CASE("root residuals and monotonicity in c") {
  double prev_min = 0, prev_max = kInfinity;
  for (double c : {1.5, 2.0, 4.0, 8.0, 16.0, 1e3, 1e6}) {
    const double r = 1.0 / c;
    const auto lo = a_min(c, 1.0, 1);
    const double hi = a_max(c, 1.0, 1);
    REQUIRE(lo.has_root);
    CHECK(std::abs(root_equation(lo.a) - r) <= 1e-12);
    CHECK(std::abs(root_equation(hi) - r) <= 1e-12);
    CHECK(lo.a < 1.0);
    CHECK(hi >= 1.0);
    CHECK(lo.a >= prev_min);
    CHECK(hi <= prev_max);
    prev_min = lo.a;
    prev_max = hi;
  }
}

TEST_CASE("series_classifier") {
  CHECK(series_classifier(EdgeDistanceFamily::power_family(1, 3, 1, 1)) ==
        SeriesBehavior::Converges);
  CHECK(series_classifier(EdgeDistanceFamily::power_family(1, 2, 1, 1)) ==
        SeriesBehavior::Diverges);
  CHECK(series_classifier(EdgeDistanceFamily::power_family(1, 1, 1, 1)) ==
        SeriesBehavior::Diverges);
  CHECK(series_classifier(EdgeDistanceFamily::log_regime(0.1, 1, 1)) == SeriesBehavior::Diverges);
  CHECK(std::string(to_string(SeriesBehavior::Converges)) == "converges");
}

TEST_CASE("theory_bounds") {
  const auto inf = theory_bounds(kInfinity, 1.0, 1);
  CHECK(inf.min_liminf_bound == 1.0);
  CHECK(inf.min_limsup_bound == 1.0);
  CHECK(inf.max_liminf_bound == 1.0);
  CHECK(inf.max_limsup_bound == 1.0);

  // The equation depends only on lambda^d c.
  const auto scaled = theory_bounds(3.0, 2.0, 2);
  const auto unit = theory_bounds(12.0, 1.0, 1);
  CHECK(scaled.lambda_pow_d == 4.0);
  CHECK(scaled.a_min == unit.a_min);
  CHECK(scaled.a_max == unit.a_max);

  const auto four = theory_bounds(4.0, 1.0, 1);
  CHECK(four.min_liminf_bound == doctest::Approx(0.3824).epsilon(1e-4));
  CHECK(four.min_limsup_bound == 1.0);
  CHECK(four.max_liminf_bound == 1.0);
  CHECK(four.max_limsup_bound == doctest::Approx(1.786).epsilon(1e-3));

  const auto degenerate = theory_bounds(0.5, 1.0, 1);
  CHECK_FALSE(degenerate.a_min_has_root);
  CHECK(degenerate.min_liminf_bound == 0.0);

  CHECK(min_limsup_proof_envelope(1.0, 3) == 8.0);
}
