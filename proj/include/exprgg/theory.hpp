#pragma once

// Closed-form quantities for the exponential random geometric graph:
// pair connection probability, the Chernoff rate function H and the binomial
// tail bounds built on it, edge-distance sequences, the containment radius,
// the two roots a(c) that scale the degree limits, and the classifier for
// the series sum_n n y_n^d.

#include <cstddef>

#include "exprgg/core_model.hpp"

namespace exprgg {

/// P[||X_i - X_j|| <= y] = (1 - e^{-lambda y})^d. Small y: ~ (lambda y)^d.
double pair_connect_prob(double y, double lambda, std::size_t d);

/// H(t) = log(t)/t + 1/t - 1 for t > 0, H(+inf) = -1. Throws for t <= 0.
/// H(1) = 0 and H < 0 elsewhere; increasing on (0,1), decreasing on (1,inf).
double h_function(double t);

/// Bound value plus whether k was inside the range where the bound is proven.
/// Out-of-range values are still computed; the caller decides what to do.
struct TailBound {
  double value;
  bool in_range;
};

/// (np/k)^k e^{k-np}, bounding P[Bin(n,p) >= k]. Valid for k >= np.
TailBound chernoff_upper_tail(std::size_t n, double p, double k);

/// Same expression bounding P[Bin(n,p) <= k]. Valid for 0 < k <= np.
/// k = 0 evaluates the k -> 0 limit e^{-np} and is flagged out of range.
TailBound chernoff_lower_tail(std::size_t n, double p, double k);

/// exp(np H(np/k)), the rate-function form of both Chernoff bounds.
double chernoff_rate_form(std::size_t n, double p, double k);

/// y_n for the family. n is real so the formula can be probed off the
/// integers; LogRegime requires n >= 2.
double edge_distance(const EdgeDistanceFamily& family, double n);

/// (1 + epsilon) log(n) / (lambda d).
double containment_radius(double n, double lambda, std::size_t d, double epsilon);

/// f(a) = a log a - a + 1, the left side of the a(c) root equation.
double root_equation(double a);

struct MinRoot {
  double a;
  bool has_root;
};

/// Root of f(a) = 1/(lambda^d c) in (0,1). When lambda^d c <= 1 there is
/// none and {0, false} is returned. c = +inf gives {1, true}.
MinRoot a_min(double c, double lambda, std::size_t d);

/// Root of f(a) = 1/(lambda^d c) in [1, inf). Always exists; c = +inf gives 1.
double a_max(double c, double lambda, std::size_t d);

enum class SeriesBehavior { Converges, Diverges };

/// Whether S = sum_n n y_n^d is finite. PowerFamily terms are alpha n^{1-beta}
/// (finite iff beta > 2); LogRegime terms grow like log n.
SeriesBehavior series_classifier(const EdgeDistanceFamily& family);

const char* to_string(SeriesBehavior behavior);

TheoryBounds theory_bounds(double c, double lambda, std::size_t d);

/// (2 lambda)^d: the min-degree limsup constant that the proof arrives at,
/// reported next to the stated lambda^d.
double min_limsup_proof_envelope(double lambda, std::size_t d);

}  // namespace exprgg
