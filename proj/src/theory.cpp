#include "exprgg/theory.hpp"

#include <cmath>

namespace exprgg {

namespace {

void check_lambda_d(double lambda, std::size_t d, const char* who) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ValidationError(std::string(who) + ": lambda must be positive and finite");
  if (d < 1) throw ValidationError(std::string(who) + ": d must be >= 1");
}

void check_binomial(std::size_t n, double p, double k, const char* who) {
  if (n < 1) throw ValidationError(std::string(who) + ": n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(who) + ": p must lie in [0,1]");
  if (!(k >= 0.0) || !std::isfinite(k))
    throw ValidationError(std::string(who) + ": k must be finite and >= 0");
}

// (np/k)^k e^{k-np} with the k -> 0 and np -> 0 limits filled in.
double chernoff_expression(double mean, double k) {
  if (k == 0.0) return std::exp(-mean);
  if (mean == 0.0) return 0.0;
  return std::exp(k * std::log(mean / k) + k - mean);
}

}  // namespace

double pair_connect_prob(double y, double lambda, std::size_t d) {
  check_lambda_d(lambda, d, "pair_connect_prob");
  if (!(y >= 0.0)) throw ValidationError("pair_connect_prob: y must be >= 0");
  return std::pow(-std::expm1(-lambda * y), static_cast<double>(d));
}

double h_function(double t) {
  if (std::isinf(t) && t > 0) return -1.0;
  if (!(t > 0.0)) throw ValidationError("h_function: t must be > 0");
  return std::log(t) / t + 1.0 / t - 1.0;
}

TailBound chernoff_upper_tail(std::size_t n, double p, double k) {
  check_binomial(n, p, k, "chernoff_upper_tail");
  const double mean = static_cast<double>(n) * p;
  return {chernoff_expression(mean, k), k >= mean};
}

TailBound chernoff_lower_tail(std::size_t n, double p, double k) {
  check_binomial(n, p, k, "chernoff_lower_tail");
  const double mean = static_cast<double>(n) * p;
  return {chernoff_expression(mean, k), k > 0.0 && k <= mean};
}

double chernoff_rate_form(std::size_t n, double p, double k) {
  check_binomial(n, p, k, "chernoff_rate_form");
  const double mean = static_cast<double>(n) * p;
  if (mean == 0.0) return k == 0.0 ? 1.0 : 0.0;
  const double t = k == 0.0 ? kInfinity : mean / k;
  return std::exp(mean * h_function(t));
}

double edge_distance(const EdgeDistanceFamily& family, double n) {
  const double inv_d = 1.0 / static_cast<double>(family.dimension());
  switch (family.kind()) {
    case EdgeDistanceFamily::Kind::LogRegime:
      if (!(n >= 2.0)) throw ValidationError("edge_distance: LogRegime needs n >= 2");
      return std::pow(family.c() * std::log(n) / n, inv_d) / family.lambda();
    case EdgeDistanceFamily::Kind::PowerFamily:
      if (!(n >= 1.0)) throw ValidationError("edge_distance: n must be >= 1");
      return std::pow(family.alpha() * std::pow(n, -family.beta()), inv_d);
  }
  return 0.0;
}

double containment_radius(double n, double lambda, std::size_t d, double epsilon) {
  check_lambda_d(lambda, d, "containment_radius");
  if (!(n > 1.0)) throw ValidationError("containment_radius: n must be >= 2");
  if (!(epsilon >= 0.0)) throw ValidationError("containment_radius: epsilon must be >= 0");
  return (1.0 + epsilon) * std::log(n) / (lambda * static_cast<double>(d));
}

double root_equation(double a) {
  if (a == 0.0) return 1.0;
  // a log a - (a - 1) with log1p keeping precision near a = 1.
  const double x = a - 1.0;
  return a * std::log1p(x) - x;
}

namespace {

double regime_rhs(double c, double lambda, std::size_t d, const char* who) {
  check_lambda_d(lambda, d, who);
  if (!(c > 0.0)) throw ValidationError(std::string(who) + ": c must be > 0");
  return 1.0 / (std::pow(lambda, static_cast<double>(d)) * c);
}

// Bisection to the last representable midpoint; returns the endpoint with
// the smaller residual. f is monotone on [lo, hi] and brackets r.
double bisect(double lo, double hi, double r, bool decreasing) {
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    const bool below = root_equation(mid) < r;
    if (below != decreasing) lo = mid;
    else hi = mid;
  }
  return std::abs(root_equation(lo) - r) <= std::abs(root_equation(hi) - r) ? lo : hi;
}

}  // namespace

MinRoot a_min(double c, double lambda, std::size_t d) {
  const double r = regime_rhs(c, lambda, d, "a_min");
  if (std::isinf(c)) return {1.0, true};
  if (std::pow(lambda, static_cast<double>(d)) * c <= 1.0) return {0.0, false};
  return {bisect(1e-15, 1.0, r, /*decreasing=*/true), true};
}

double a_max(double c, double lambda, std::size_t d) {
  const double r = regime_rhs(c, lambda, d, "a_max");
  if (std::isinf(c)) return 1.0;
  double hi = 2.0;
  while (root_equation(hi) < r) hi *= 2.0;
  return bisect(1.0, hi, r, /*decreasing=*/false);
}

SeriesBehavior series_classifier(const EdgeDistanceFamily& family) {
  if (family.kind() == EdgeDistanceFamily::Kind::LogRegime) return SeriesBehavior::Diverges;
  return family.beta() > 2.0 ? SeriesBehavior::Converges : SeriesBehavior::Diverges;
}

const char* to_string(SeriesBehavior behavior) {
  return behavior == SeriesBehavior::Converges ? "converges" : "diverges";
}

TheoryBounds theory_bounds(double c, double lambda, std::size_t d) {
  const auto lo = a_min(c, lambda, d);
  const double hi = a_max(c, lambda, d);
  return TheoryBounds(std::pow(lambda, static_cast<double>(d)), lo.a, lo.has_root, hi);
}

double min_limsup_proof_envelope(double lambda, std::size_t d) {
  check_lambda_d(lambda, d, "min_limsup_proof_envelope");
  return std::pow(2.0 * lambda, static_cast<double>(d));
}

}  // namespace exprgg
