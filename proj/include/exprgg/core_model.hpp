#pragma once

// Domain types shared by every exprgg module. All types validate their
// invariants on construction and are immutable afterwards.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace exprgg {

/// Thrown when a value violates a documented invariant or precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when reading or writing a file fails. The message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// n points in d dimensions with nonnegative finite coordinates, stored
/// point-major in one flat buffer, plus the (seed, lambda) that produced them.
class PointCloud {
 public:
  PointCloud(std::size_t dimension, std::vector<double> coords,
             std::uint64_t seed, double lambda);

  std::size_t size() const { return coords_.size() / dimension_; }
  std::size_t dimension() const { return dimension_; }
  std::uint64_t seed() const { return seed_; }
  double lambda() const { return lambda_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dimension_, dimension_};
  }
  std::span<const double> coords() const { return coords_; }

  bool operator==(const PointCloud&) const = default;

 private:
  std::size_t dimension_;
  std::vector<double> coords_;
  std::uint64_t seed_;
  double lambda_;
};

/// One graph instance G_n(y).
struct RggConfig {
  std::size_t n;
  std::size_t d;
  double lambda;
  double y;
  std::uint64_t seed;

  RggConfig(std::size_t n, std::size_t d, double lambda, double y,
            std::uint64_t seed);

  bool operator==(const RggConfig&) const = default;
};

/// Per-vertex degrees of G_n(y) with the derived edge count and extremes.
class DegreeSummary {
 public:
  /// Derives edge count, min and max from the degree sequence. Rejects an
  /// odd degree sum, an empty sequence or a degree above n - 1.
  explicit DegreeSummary(std::vector<std::uint32_t> degrees);

  std::span<const std::uint32_t> degrees() const { return degrees_; }
  std::size_t size() const { return degrees_.size(); }
  std::uint64_t edge_count() const { return edge_count_; }
  std::uint32_t min_degree() const { return min_degree_; }
  std::uint32_t max_degree() const { return max_degree_; }

  bool operator==(const DegreeSummary&) const = default;

 private:
  std::vector<std::uint32_t> degrees_;
  std::uint64_t edge_count_ = 0;
  std::uint32_t min_degree_ = 0;
  std::uint32_t max_degree_ = 0;
};

/// Rule n -> y_n. LogRegime: lambda * y_n = (c log n / n)^(1/d).
/// PowerFamily: y_n^d = alpha * n^-beta.
class EdgeDistanceFamily {
 public:
  enum class Kind { LogRegime, PowerFamily };

  /// c may be +infinity.
  static EdgeDistanceFamily log_regime(double c, double lambda, std::size_t d);
  static EdgeDistanceFamily power_family(double alpha, double beta,
                                         double lambda, std::size_t d);

  Kind kind() const { return kind_; }
  double c() const { return param1_; }
  double alpha() const { return param1_; }
  double beta() const { return param2_; }
  double lambda() const { return lambda_; }
  std::size_t dimension() const { return d_; }

  /// "log" or "power".
  std::string tag() const;

  bool operator==(const EdgeDistanceFamily&) const = default;

 private:
  EdgeDistanceFamily(Kind kind, double p1, double p2, double lambda,
                     std::size_t d);

  Kind kind_;
  double param1_;
  double param2_;
  double lambda_;
  std::size_t d_;
};

/// The constants bounding the normalized min and max degree for a given
/// regime constant c. a_min is the root of a log a - a + 1 = 1/(lambda^d c)
/// in (0,1) and a_max the root in [1, inf).
struct TheoryBounds {
  double lambda_pow_d;
  double a_min;
  bool a_min_has_root;
  double a_max;
  double min_liminf_bound;
  double min_limsup_bound;
  double max_liminf_bound;
  double max_limsup_bound;

  TheoryBounds(double lambda_pow_d, double a_min, bool a_min_has_root,
               double a_max);

  bool operator==(const TheoryBounds&) const = default;
};

}  // namespace exprgg
