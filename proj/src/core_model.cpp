#include "exprgg/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace exprgg {

PointCloud::PointCloud(std::size_t dimension, std::vector<double> coords,
                       std::uint64_t seed, double lambda)
    : dimension_(dimension), coords_(std::move(coords)), seed_(seed),
      lambda_(lambda) {
  if (dimension_ == 0) throw ValidationError("PointCloud: dimension must be >= 1");
  if (coords_.empty()) throw ValidationError("PointCloud: need at least one point");
  if (coords_.size() % dimension_ != 0)
    throw ValidationError("PointCloud: coordinate count " +
                          std::to_string(coords_.size()) +
                          " is not a multiple of d=" + std::to_string(dimension_));
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_))
    throw ValidationError("PointCloud: lambda must be positive and finite");
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    const double x = coords_[k];
    if (!std::isfinite(x) || x < 0.0)
      throw ValidationError("PointCloud: coordinate " + std::to_string(k % dimension_) +
                            " of point " + std::to_string(k / dimension_) +
                            " is negative or not finite");
  }
}

RggConfig::RggConfig(std::size_t n_, std::size_t d_, double lambda_, double y_,
                     std::uint64_t seed_)
    : n(n_), d(d_), lambda(lambda_), y(y_), seed(seed_) {
  if (n < 2) throw ValidationError("RggConfig: n must be >= 2");
  if (d < 1) throw ValidationError("RggConfig: d must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ValidationError("RggConfig: lambda must be positive and finite");
  if (!(y >= 0.0)) throw ValidationError("RggConfig: y must be >= 0");
}

DegreeSummary::DegreeSummary(std::vector<std::uint32_t> degrees)
    : degrees_(std::move(degrees)) {
  if (degrees_.empty()) throw ValidationError("DegreeSummary: empty degree sequence");
  const std::uint64_t n = degrees_.size();
  std::uint64_t sum = 0;
  for (auto deg : degrees_) {
    if (deg > n - 1)
      throw ValidationError("DegreeSummary: degree " + std::to_string(deg) +
                            " exceeds n-1=" + std::to_string(n - 1));
    sum += deg;
  }
  if (sum % 2 != 0)
    throw ValidationError("DegreeSummary: odd degree sum " + std::to_string(sum));
  edge_count_ = sum / 2;
  const auto [lo, hi] = std::minmax_element(degrees_.begin(), degrees_.end());
  min_degree_ = *lo;
  max_degree_ = *hi;
}

EdgeDistanceFamily::EdgeDistanceFamily(Kind kind, double p1, double p2,
                                       double lambda, std::size_t d)
    : kind_(kind), param1_(p1), param2_(p2), lambda_(lambda), d_(d) {
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_))
    throw ValidationError("EdgeDistanceFamily: lambda must be positive and finite");
  if (d_ < 1) throw ValidationError("EdgeDistanceFamily: d must be >= 1");
}

EdgeDistanceFamily EdgeDistanceFamily::log_regime(double c, double lambda,
                                                  std::size_t d) {
  if (!(c > 0.0)) throw ValidationError("LogRegime: c must be > 0");
  return {Kind::LogRegime, c, 0.0, lambda, d};
}

EdgeDistanceFamily EdgeDistanceFamily::power_family(double alpha, double beta,
                                                    double lambda, std::size_t d) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ValidationError("PowerFamily: alpha must be positive and finite");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw ValidationError("PowerFamily: beta must be positive and finite");
  return {Kind::PowerFamily, alpha, beta, lambda, d};
}

std::string EdgeDistanceFamily::tag() const {
  return kind_ == Kind::LogRegime ? "log" : "power";
}

TheoryBounds::TheoryBounds(double lambda_pow_d_, double a_min_, bool has_root,
                           double a_max_)
    : lambda_pow_d(lambda_pow_d_), a_min(a_min_), a_min_has_root(has_root),
      a_max(a_max_), min_liminf_bound(a_min_ * lambda_pow_d_),
      min_limsup_bound(lambda_pow_d_), max_liminf_bound(lambda_pow_d_),
      max_limsup_bound(a_max_ * lambda_pow_d_) {
  if (!(lambda_pow_d > 0.0)) throw ValidationError("TheoryBounds: lambda^d must be > 0");
  if (!(a_max >= 1.0)) throw ValidationError("TheoryBounds: a_max must be >= 1");
  // a(inf) = 1 on both branches; otherwise a_min sits strictly below 1.
  if (!(a_min >= 0.0 && a_min <= 1.0))
    throw ValidationError("TheoryBounds: a_min must lie in [0,1]");
  if (a_min == 1.0 && a_max != 1.0)
    throw ValidationError("TheoryBounds: a_min = 1 only in the c = inf limit");
  if (!has_root && a_min != 0.0)
    throw ValidationError("TheoryBounds: a_min must be 0 when no root exists");
}

}  // namespace exprgg
