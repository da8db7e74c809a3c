#include "exprgg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "exprgg/format.hpp"
#include "exprgg/graph_stats.hpp"
#include "exprgg/parallel.hpp"
#include "exprgg/sampling.hpp"
#include "exprgg/theory.hpp"

namespace exprgg {

namespace {

constexpr std::pair<ExperimentKind, const char*> kKindNames[] = {
    {ExperimentKind::DegreeLaw, "degree-law"},
    {ExperimentKind::EdgeSlln, "edge-slln"},
    {ExperimentKind::UniformSlln, "uniform-slln"},
    {ExperimentKind::Containment, "containment"},
    {ExperimentKind::Threshold, "threshold"},
};

bool is_log_family(const ExperimentSpec& spec) {
  return spec.family && spec.family->kind() == EdgeDistanceFamily::Kind::LogRegime;
}

double choose2(std::size_t n) {
  const double x = static_cast<double>(n);
  return x * (x - 1.0) / 2.0;
}

struct Moments {
  double mean = 0, sd = 0, min = 0, max = 0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  double sum = 0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  m.min = *lo;
  m.max = *hi;
  return m;
}

void add_moments(SummaryRow& row, const std::string& prefix, const std::vector<double>& xs) {
  const auto m = moments(xs);
  row.stats.emplace_back(prefix + "_mean", m.mean);
  row.stats.emplace_back(prefix + "_sd", m.sd);
  row.stats.emplace_back(prefix + "_min", m.min);
  row.stats.emplace_back(prefix + "_max", m.max);
  row.stats.emplace_back(prefix + "_spread", m.max - m.min);
}

ResultRow base_row(const ExperimentSpec& spec, std::size_t n, std::size_t rep,
                   std::uint64_t seed) {
  ResultRow row;
  row.experiment = spec.kind;
  row.n = n;
  row.d = spec.d;
  row.lambda = spec.lambda;
  row.replication = rep;
  row.seed = seed;
  if (spec.kind == ExperimentKind::UniformSlln) {
    row.family = "ygrid";
  } else if (spec.kind == ExperimentKind::Containment || !spec.family) {
    row.family = "none";
  } else {
    row.family = spec.family->tag();
    if (spec.family->kind() == EdgeDistanceFamily::Kind::LogRegime) {
      row.param1 = spec.family->c();
    } else {
      row.param1 = spec.family->alpha();
      row.param2 = spec.family->beta();
    }
  }
  return row;
}

struct JobOutput {
  std::vector<ResultRow> rows;
  std::vector<double> extra;
};

// Runs fn(n, rep, seed) for every (n, replication) job and returns outputs
// indexed [n_index][rep].
template <typename Fn>
std::vector<std::vector<JobOutput>> run_jobs(const ExperimentSpec& spec,
                                             const RunOptions& options, Fn&& fn) {
  const std::size_t reps = spec.replications;
  const std::size_t jobs = spec.n_list.size() * reps;
  std::vector<JobOutput> flat(jobs);
  parallel_for(jobs, options.threads, [&](std::size_t job) {
    const std::size_t n = spec.n_list[job / reps];
    const std::size_t rep = job % reps;
    const std::uint64_t seed = derive_replication_seed(spec.base_seed, job);
    flat[job] = fn(n, rep, seed);
  });
  std::vector<std::vector<JobOutput>> out(spec.n_list.size());
  for (std::size_t job = 0; job < jobs; ++job) out[job / reps].push_back(std::move(flat[job]));
  return out;
}

void collect_rows(ExperimentResult& result, std::vector<std::vector<JobOutput>>& outputs) {
  for (auto& per_n : outputs)
    for (auto& job : per_n)
      for (auto& row : job.rows) result.rows.push_back(std::move(row));
}

void log_summary(const ExperimentResult& result, const RunOptions& options) {
  if (!options.log) return;
  for (const auto& s : result.summary) {
    *options.log << to_string(result.spec.kind) << " n=" << s.n;
    for (const auto& [name, value] : s.stats) *options.log << ' ' << name << '=' << detail::fmt17(value);
    *options.log << '\n';
  }
}

void require_kind(const ExperimentSpec& spec, ExperimentKind kind) {
  if (spec.kind != kind)
    throw ValidationError(std::string("experiment runner for ") + to_string(kind) +
                          " given a spec of kind " + to_string(spec.kind));
  spec.validate();
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (const auto& [k, n] : kKindNames)
    if (name == n) return k;
  throw ValidationError("unknown experiment kind '" + name + "'");
}

void ExperimentSpec::validate() const {
  if (n_list.empty()) throw ValidationError("experiment: n_list is empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 2) throw ValidationError("experiment: every n must be >= 2");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw ValidationError("experiment: n_list must be strictly increasing");
  }
  if (d < 1) throw ValidationError("experiment: d must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ValidationError("experiment: lambda must be positive and finite");
  if (replications < 1) throw ValidationError("experiment: replications must be >= 1");

  switch (kind) {
    case ExperimentKind::DegreeLaw:
    case ExperimentKind::EdgeSlln:
      if (!is_log_family(*this))
        throw ValidationError(std::string(to_string(kind)) + " requires a LogRegime family (--c)");
      break;
    case ExperimentKind::Threshold:
      if (!family) throw ValidationError("threshold requires an edge-distance family");
      break;
    case ExperimentKind::UniformSlln:
      if (y_grid.empty()) throw ValidationError("uniform-slln requires a y grid");
      for (std::size_t i = 0; i < y_grid.size(); ++i) {
        if (!(y_grid[i] > 0.0 && y_grid[i] <= 1.0))
          throw ValidationError("uniform-slln: grid values must lie in (0, 1]");
        if (i > 0 && y_grid[i] <= y_grid[i - 1])
          throw ValidationError("uniform-slln: y grid must be strictly increasing");
      }
      break;
    case ExperimentKind::Containment:
      if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw ValidationError("containment: epsilon must be finite and >= 0");
      break;
  }
  if (family) {
    if (family->dimension() != d || family->lambda() != lambda)
      throw ValidationError("experiment: family (lambda, d) disagrees with the spec");
    if (family->kind() == EdgeDistanceFamily::Kind::LogRegime && std::isinf(family->c()))
      throw ValidationError("experiment: c = inf gives an infinite edge distance");
    for (auto n : n_list) {
      const double y = edge_distance(*family, static_cast<double>(n));
      if (!(y > 0.0) || !std::isfinite(y))
        throw ValidationError("experiment: family gives y_n = " + detail::fmt17(y) +
                              " at n=" + std::to_string(n) + "; y_n must be positive and finite");
    }
  }
}

std::vector<double> default_uniform_y_grid() {
  std::vector<double> ys;
  for (int k = 1; k <= 20; ++k) ys.push_back(0.05 * k);
  return ys;
}

double SummaryRow::at(const std::string& name) const {
  for (const auto& [key, value] : stats)
    if (key == name) return value;
  throw std::out_of_range("summary statistic '" + name + "' not present");
}

const SummaryRow& ExperimentResult::summary_for(std::size_t n) const {
  for (const auto& s : summary)
    if (s.n == n) return s;
  throw std::out_of_range("no summary for n=" + std::to_string(n));
}

bool is_contained(const PointCloud& cloud, double radius) {
  for (double x : cloud.coords())
    if (x > radius) return false;
  return true;
}

bool no_corner_escape(const PointCloud& cloud, double radius) {
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    if (std::all_of(p.begin(), p.end(), [&](double x) { return x > radius; })) return false;
  }
  return true;
}

ExperimentResult run_degree_law(const ExperimentSpec& spec, const RunOptions& options) {
  require_kind(spec, ExperimentKind::DegreeLaw);
  ExperimentResult result{spec, {}, {}, {}, {}, {}};
  const auto& family = *spec.family;
  const auto bounds = theory_bounds(family.c(), spec.lambda, spec.d);
  result.bounds = bounds;
  const double envelope = min_limsup_proof_envelope(spec.lambda, spec.d);

  auto outputs = run_jobs(spec, options, [&](std::size_t n, std::size_t rep, std::uint64_t seed) {
    const double y = edge_distance(family, static_cast<double>(n));
    const auto cloud = sample_exponential_cloud(n, spec.d, spec.lambda, seed);
    const auto summary = degree_summary(cloud, y);
    const RggConfig config(n, spec.d, spec.lambda, y, seed);
    const auto ratios = degree_ratios(summary, config);
    auto row = base_row(spec, n, rep, seed);
    row.y_n = y;
    row.epsilon_n = summary.edge_count();
    row.min_degree = summary.min_degree();
    row.max_degree = summary.max_degree();
    row.min_ratio = ratios.min_ratio;
    row.max_ratio = ratios.max_ratio;
    row.p_y = pair_connect_prob(y, spec.lambda, spec.d);
    row.gap = edge_density_gap(summary, config);
    return JobOutput{{row}, {}};
  });

  for (std::size_t k = 0; k < spec.n_list.size(); ++k) {
    std::vector<double> mins, maxs;
    double above_stated = 0, above_envelope = 0;
    for (const auto& job : outputs[k]) {
      const auto& row = job.rows.front();
      mins.push_back(*row.min_ratio);
      maxs.push_back(*row.max_ratio);
      if (*row.min_ratio > bounds.min_limsup_bound) ++above_stated;
      if (*row.min_ratio > envelope) ++above_envelope;
    }
    SummaryRow s{spec.n_list[k], {}};
    s.stats.emplace_back("y_n", edge_distance(family, static_cast<double>(spec.n_list[k])));
    add_moments(s, "min_ratio", mins);
    add_moments(s, "max_ratio", maxs);
    s.stats.emplace_back("min_liminf_bound", bounds.min_liminf_bound);
    s.stats.emplace_back("min_limsup_bound", bounds.min_limsup_bound);
    s.stats.emplace_back("min_limsup_proof_envelope", envelope);
    s.stats.emplace_back("max_liminf_bound", bounds.max_liminf_bound);
    s.stats.emplace_back("max_limsup_bound", bounds.max_limsup_bound);
    s.stats.emplace_back("reps_min_ratio_above_stated_limsup", above_stated);
    s.stats.emplace_back("reps_min_ratio_above_proof_envelope", above_envelope);
    result.summary.push_back(std::move(s));
  }
  collect_rows(result, outputs);
  result.oracle_notes.push_back(
      "min_limsup_bound is the stated constant lambda^d; min_limsup_proof_envelope is the "
      "(2 lambda)^d constant reached by the proof. Replications with min_ratio between the "
      "two are counted in reps_min_ratio_above_stated_limsup, not treated as failures.");
  log_summary(result, options);
  return result;
}

ExperimentResult run_edge_slln(const ExperimentSpec& spec, const RunOptions& options) {
  require_kind(spec, ExperimentKind::EdgeSlln);
  ExperimentResult result{spec, {}, {}, {}, {}, {}};
  const auto& family = *spec.family;
  result.bounds = theory_bounds(family.c(), spec.lambda, spec.d);

  auto outputs = run_jobs(spec, options, [&](std::size_t n, std::size_t rep, std::uint64_t seed) {
    const double y = edge_distance(family, static_cast<double>(n));
    const auto cloud = sample_exponential_cloud(n, spec.d, spec.lambda, seed);
    const auto summary = degree_summary(cloud, y);
    const RggConfig config(n, spec.d, spec.lambda, y, seed);
    auto row = base_row(spec, n, rep, seed);
    row.y_n = y;
    row.epsilon_n = summary.edge_count();
    row.min_degree = summary.min_degree();
    row.max_degree = summary.max_degree();
    row.p_y = pair_connect_prob(y, spec.lambda, spec.d);
    row.gap = edge_density_gap(summary, config);
    return JobOutput{{row}, {}};
  });

  for (std::size_t k = 0; k < spec.n_list.size(); ++k) {
    std::vector<double> gaps, relative;
    double p = 0;
    for (const auto& job : outputs[k]) {
      const auto& row = job.rows.front();
      p = *row.p_y;
      gaps.push_back(*row.gap);
      relative.push_back(*row.gap / *row.p_y);
    }
    SummaryRow s{spec.n_list[k], {}};
    s.stats.emplace_back("y_n", edge_distance(family, static_cast<double>(spec.n_list[k])));
    s.stats.emplace_back("p_y", p);
    s.stats.emplace_back("mean_gap", moments(gaps).mean);
    add_moments(s, "relative_gap", relative);
    result.summary.push_back(std::move(s));
  }
  collect_rows(result, outputs);
  log_summary(result, options);
  return result;
}

ExperimentResult run_uniform_slln(const ExperimentSpec& spec, const RunOptions& options) {
  require_kind(spec, ExperimentKind::UniformSlln);
  ExperimentResult result{spec, {}, {}, {}, {}, {}};
  const auto& ys = spec.y_grid;

  auto outputs = run_jobs(spec, options, [&](std::size_t n, std::size_t rep, std::uint64_t seed) {
    const auto cloud = sample_exponential_cloud(n, spec.d, spec.lambda, seed);
    const auto counts = edge_counts_for_grid(cloud, ys);
    JobOutput out;
    double sup_gap = 0;
    for (std::size_t g = 0; g < ys.size(); ++g) {
      auto row = base_row(spec, n, rep, seed);
      row.y_n = ys[g];
      row.epsilon_n = counts[g];
      row.p_y = pair_connect_prob(ys[g], spec.lambda, spec.d);
      row.gap = std::abs(static_cast<double>(counts[g]) / choose2(n) - *row.p_y);
      sup_gap = std::max(sup_gap, *row.gap);
      out.rows.push_back(std::move(row));
    }
    out.extra.push_back(sup_gap);
    return out;
  });

  for (std::size_t k = 0; k < spec.n_list.size(); ++k) {
    std::vector<double> sups;
    for (const auto& job : outputs[k]) sups.push_back(job.extra.front());
    SummaryRow s{spec.n_list[k], {}};
    add_moments(s, "sup_gap", sups);
    result.summary.push_back(std::move(s));
  }
  collect_rows(result, outputs);
  log_summary(result, options);
  return result;
}

ExperimentResult run_containment(const ExperimentSpec& spec, const RunOptions& options) {
  require_kind(spec, ExperimentKind::Containment);
  ExperimentResult result{spec, {}, {}, {}, {}, {}};

  auto outputs = run_jobs(spec, options, [&](std::size_t n, std::size_t rep, std::uint64_t seed) {
    const double radius = containment_radius(static_cast<double>(n), spec.lambda, spec.d,
                                             spec.epsilon);
    const auto cloud = sample_exponential_cloud(n, spec.d, spec.lambda, seed);
    auto row = base_row(spec, n, rep, seed);
    row.contained = is_contained(cloud, radius);
    return JobOutput{{row}, {no_corner_escape(cloud, radius) ? 1.0 : 0.0}};
  });

  const double d = static_cast<double>(spec.d);
  for (std::size_t k = 0; k < spec.n_list.size(); ++k) {
    const double n = static_cast<double>(spec.n_list[k]);
    double contained = 0, corner_free = 0;
    for (const auto& job : outputs[k]) {
      contained += *job.rows.front().contained ? 1.0 : 0.0;
      corner_free += job.extra.front();
    }
    const double reps = static_cast<double>(spec.replications);
    SummaryRow s{spec.n_list[k], {}};
    s.stats.emplace_back("radius", containment_radius(n, spec.lambda, spec.d, spec.epsilon));
    s.stats.emplace_back("containment_frequency", contained / reps);
    s.stats.emplace_back("corner_escape_free_frequency", corner_free / reps);
    // Union bounds: n d P[X_k > R] for any coordinate, n P[X > R on all axes]
    // for the corner event; d n^-eps is the bound at the undivided radius.
    s.stats.emplace_back("escape_union_bound_any_coordinate",
                         std::min(1.0, n * d * std::pow(n, -(1.0 + spec.epsilon) / d)));
    s.stats.emplace_back("escape_union_bound_all_coordinates",
                         std::min(1.0, std::pow(n, -spec.epsilon)));
    s.stats.emplace_back("escape_bound_d_n_pow_minus_eps", d * std::pow(n, -spec.epsilon));
    result.summary.push_back(std::move(s));
  }
  collect_rows(result, outputs);
  result.oracle_notes.push_back(
      "contained: every coordinate of every point <= R = (1+eps) log n / (lambda d). "
      "P[escape] <= n d n^{-(1+eps)/d} (union over points and axes). "
      "corner_escape_free: no point exceeds R on all axes; P[escape] <= n (e^{-lambda R})^d = n^{-eps}.");
  log_summary(result, options);
  return result;
}

ExperimentResult run_threshold_dichotomy(const ExperimentSpec& spec, const RunOptions& options) {
  require_kind(spec, ExperimentKind::Threshold);
  ExperimentResult result{spec, {}, {}, {}, {}, {}};
  const auto& family = *spec.family;
  result.series = to_string(series_classifier(family));

  auto outputs = run_jobs(spec, options, [&](std::size_t n, std::size_t rep, std::uint64_t seed) {
    const double y = edge_distance(family, static_cast<double>(n));
    const auto cloud = sample_exponential_cloud(n, spec.d, spec.lambda, seed);
    const auto summary = degree_summary(cloud, y);
    auto row = base_row(spec, n, rep, seed);
    row.y_n = y;
    row.epsilon_n = summary.edge_count();
    row.max_degree = summary.max_degree();
    row.p_y = pair_connect_prob(y, spec.lambda, spec.d);
    row.has_edge = summary.edge_count() >= 1;
    return JobOutput{{row}, {}};
  });

  for (std::size_t k = 0; k < spec.n_list.size(); ++k) {
    const std::size_t n = spec.n_list[k];
    const double y = edge_distance(family, static_cast<double>(n));
    const double expected = choose2(n) * pair_connect_prob(y, spec.lambda, spec.d);
    double with_edge = 0;
    for (const auto& job : outputs[k]) with_edge += *job.rows.front().has_edge ? 1.0 : 0.0;
    SummaryRow s{n, {}};
    s.stats.emplace_back("y_n", y);
    s.stats.emplace_back("edge_frequency", with_edge / static_cast<double>(spec.replications));
    s.stats.emplace_back("expected_edges", expected);
    s.stats.emplace_back("first_moment_bound", std::min(1.0, expected));
    result.summary.push_back(std::move(s));
    result.oracle_notes.push_back(
        "n=" + std::to_string(n) + ": E[eps_n] = C(n,2) p(y_n) = " + detail::fmt17(expected) +
        "; first-moment bound P[Delta_n >= 1] = P[eps_n >= 1] <= E[eps_n]");
  }
  result.oracle_notes.push_back(std::string("series sum_n n y_n^d ") + *result.series);
  collect_rows(result, outputs);
  log_summary(result, options);
  return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  switch (spec.kind) {
    case ExperimentKind::DegreeLaw: return run_degree_law(spec, options);
    case ExperimentKind::EdgeSlln: return run_edge_slln(spec, options);
    case ExperimentKind::UniformSlln: return run_uniform_slln(spec, options);
    case ExperimentKind::Containment: return run_containment(spec, options);
    case ExperimentKind::Threshold: return run_threshold_dichotomy(spec, options);
  }
  throw ValidationError("unknown experiment kind");
}

nlohmann::json spec_to_json(const ExperimentSpec& spec) {
  nlohmann::json j;
  j["kind"] = to_string(spec.kind);
  j["n_list"] = spec.n_list;
  j["d"] = spec.d;
  j["lambda"] = spec.lambda;
  if (spec.family) {
    const auto& f = *spec.family;
    if (f.kind() == EdgeDistanceFamily::Kind::LogRegime)
      j["family"] = {{"type", "log"}, {"c", f.c()}};
    else
      j["family"] = {{"type", "power"}, {"alpha", f.alpha()}, {"beta", f.beta()}};
  } else {
    j["family"] = nullptr;
  }
  j["y_grid"] = spec.y_grid;
  j["replications"] = spec.replications;
  j["base_seed"] = spec.base_seed;
  j["epsilon"] = spec.epsilon;
  return j;
}

ExperimentSpec spec_from_json(const nlohmann::json& input) {
  try {
    const auto& j = input.contains("spec") ? input.at("spec") : input;
    ExperimentSpec spec;
    spec.kind = parse_experiment_kind(j.at("kind").get<std::string>());
    spec.n_list = j.at("n_list").get<std::vector<std::size_t>>();
    spec.d = j.at("d").get<std::size_t>();
    spec.lambda = j.at("lambda").get<double>();
    if (j.contains("family") && !j.at("family").is_null()) {
      const auto& f = j.at("family");
      const auto type = f.at("type").get<std::string>();
      if (type == "log")
        spec.family = EdgeDistanceFamily::log_regime(f.at("c").get<double>(), spec.lambda, spec.d);
      else if (type == "power")
        spec.family = EdgeDistanceFamily::power_family(f.at("alpha").get<double>(),
                                                       f.at("beta").get<double>(), spec.lambda,
                                                       spec.d);
      else
        throw ValidationError("spec: unknown family type '" + type + "'");
    }
    if (j.contains("y_grid")) spec.y_grid = j.at("y_grid").get<std::vector<double>>();
    spec.replications = j.at("replications").get<std::size_t>();
    spec.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("epsilon")) spec.epsilon = j.at("epsilon").get<double>();
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("spec: ") + e.what());
  }
}

nlohmann::json make_manifest(const ExperimentResult& result, const std::string& table_path,
                             const std::string& format) {
  nlohmann::json m;
  m["artifact"] = "exprgg";
  m["version"] = kArtifactVersion;
  m["spec"] = spec_to_json(result.spec);
  m["table"] = table_path;
  m["format"] = format;
  m["rows"] = result.rows.size();
  if (result.bounds) {
    const auto& b = *result.bounds;
    m["bounds"] = {{"lambda_pow_d", b.lambda_pow_d},
                   {"a_min", b.a_min},
                   {"a_min_has_root", b.a_min_has_root},
                   {"a_max", b.a_max},
                   {"min_liminf_bound", b.min_liminf_bound},
                   {"min_limsup_bound", b.min_limsup_bound},
                   {"min_limsup_proof_envelope",
                    min_limsup_proof_envelope(result.spec.lambda, result.spec.d)},
                   {"max_liminf_bound", b.max_liminf_bound},
                   {"max_limsup_bound", b.max_limsup_bound}};
  }
  if (result.series) m["series"] = *result.series;
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& s : result.summary) {
    nlohmann::json row = nlohmann::json::object();
    row["n"] = s.n;
    for (const auto& [name, value] : s.stats) row[name] = value;
    summary.push_back(std::move(row));
  }
  m["summary"] = std::move(summary);
  m["oracles"] = result.oracle_notes;
  return m;
}

}  // namespace exprgg
