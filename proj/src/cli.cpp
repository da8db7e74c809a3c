#include "exprgg/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "exprgg/experiments.hpp"
#include "exprgg/format.hpp"
#include "exprgg/graph_stats.hpp"
#include "exprgg/sampling.hpp"
#include "exprgg/table_io.hpp"
#include "exprgg/theory.hpp"
#include "exprgg/verify.hpp"

namespace exprgg {

namespace {

using detail::fmt17;

// Parses a real that may be spelled "inf".
double parse_real(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return x;
  } catch (const std::logic_error&) {
    throw ValidationError(flag + ": '" + text + "' is not a number");
  }
}

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      // Allow scientific shorthand such as 1e5 when it is an exact integer.
      const double x = parse_real(item, "--n");
      if (!(x >= 0) || x != std::floor(x) || x > 1e15)
        throw ValidationError("--n: '" + item + "' is not a nonnegative integer");
      out.push_back(static_cast<std::size_t>(x));
    } else {
      out.push_back(std::stoull(item));
    }
  }
  if (out.empty()) throw ValidationError("--n: empty list");
  return out;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item, flag));
  return out;
}

std::size_t default_threads() {
  if (const char* env = std::getenv("EXPRGG_THREADS")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw ValidationError("EXPRGG_THREADS: '" + std::string(env) + "' is not an integer");
    }
  }
  return 0;
}

struct Flags {
  // sample / graph
  std::size_t n = 0, d = 0;
  double lambda = 0, y = 0;
  std::uint64_t seed = 0;
  std::string out_path, format = "csv";
  std::optional<std::size_t> threads;
  // theory
  std::string t, c;
  double p = 0, k = 0, epsilon = 0, real_n = 0;
  // verify
  std::size_t cases = 0, max_n = 0;
  // experiment
  std::string kind, n_list, spec_path, y_grid;
  std::optional<double> alpha, beta, exp_epsilon;
  std::optional<std::string> exp_c;
  std::optional<std::size_t> reps, exp_d;
  std::optional<double> exp_lambda;
  std::optional<std::uint64_t> exp_seed;
};

int cmd_sample(const Flags& f, std::ostream& out) {
  const auto cloud = sample_exponential_cloud(f.n, f.d, f.lambda, f.seed);
  if (f.out_path.empty()) {
    write_cloud(out, cloud);
  } else {
    std::ostringstream buf;
    write_cloud(buf, cloud);
    write_text_file(f.out_path, buf.str());
  }
  return kExitOk;
}

int cmd_graph(const Flags& f, std::ostream& out) {
  const auto format = parse_table_format(f.format);
  const RggConfig config(f.n, f.d, f.lambda, f.y, f.seed);
  const auto cloud = sample_exponential_cloud(config.n, config.d, config.lambda, config.seed);
  const auto summary = degree_summary(cloud, config.y, f.threads.value_or(default_threads()));
  const double gap = edge_density_gap(summary, config);
  std::optional<DegreeRatios> ratios;
  if (config.y > 0) ratios = degree_ratios(summary, config);

  if (format == TableFormat::Csv) {
    out << "n,d,lambda,y,seed,epsilon_n,min_degree,max_degree,min_ratio,max_ratio,p_y,gap\n"
        << config.n << ',' << config.d << ',' << fmt17(config.lambda) << ',' << fmt17(config.y)
        << ',' << config.seed << ',' << summary.edge_count() << ',' << summary.min_degree() << ','
        << summary.max_degree() << ',' << (ratios ? fmt17(ratios->min_ratio) : "") << ','
        << (ratios ? fmt17(ratios->max_ratio) : "") << ','
        << fmt17(pair_connect_prob(config.y, config.lambda, config.d)) << ',' << fmt17(gap)
        << '\n';
  } else {
    out << "{\"n\": " << config.n << ", \"d\": " << config.d
        << ", \"lambda\": " << fmt17(config.lambda) << ", \"y\": " << fmt17(config.y)
        << ", \"seed\": " << config.seed << ", \"epsilon_n\": " << summary.edge_count()
        << ", \"min_degree\": " << summary.min_degree()
        << ", \"max_degree\": " << summary.max_degree()
        << ", \"min_ratio\": " << (ratios ? fmt17(ratios->min_ratio) : "null")
        << ", \"max_ratio\": " << (ratios ? fmt17(ratios->max_ratio) : "null")
        << ", \"p_y\": " << fmt17(pair_connect_prob(config.y, config.lambda, config.d))
        << ", \"gap\": " << fmt17(gap) << ", \"degrees\": [";
    const auto degrees = summary.degrees();
    for (std::size_t i = 0; i < degrees.size(); ++i) out << (i ? ", " : "") << degrees[i];
    out << "]}\n";
  }
  return kExitOk;
}

const char* boolstr(bool b) { return b ? "true" : "false"; }

int cmd_theory(const std::string& which, const Flags& f, std::ostream& out) {
  if (which == "p") {
    out << fmt17(pair_connect_prob(f.y, f.lambda, f.d)) << '\n';
  } else if (which == "h") {
    out << fmt17(h_function(parse_real(f.t, "--t"))) << '\n';
  } else if (which == "chernoff-upper" || which == "chernoff-lower") {
    const auto b = which == "chernoff-upper" ? chernoff_upper_tail(f.n, f.p, f.k)
                                             : chernoff_lower_tail(f.n, f.p, f.k);
    out << "bound=" << fmt17(b.value) << "\nin_range=" << boolstr(b.in_range) << '\n';
  } else if (which == "a-min") {
    const auto r = a_min(parse_real(f.c, "--c"), f.lambda, f.d);
    out << "a=" << fmt17(r.a) << "\nhas_root=" << boolstr(r.has_root) << '\n';
  } else if (which == "a-max") {
    out << fmt17(a_max(parse_real(f.c, "--c"), f.lambda, f.d)) << '\n';
  } else if (which == "bounds") {
    const auto b = theory_bounds(parse_real(f.c, "--c"), f.lambda, f.d);
    out << "lambda_pow_d=" << fmt17(b.lambda_pow_d) << '\n'
        << "a_min=" << fmt17(b.a_min) << '\n'
        << "a_min_has_root=" << boolstr(b.a_min_has_root) << '\n'
        << "a_max=" << fmt17(b.a_max) << '\n'
        << "min_liminf_bound=" << fmt17(b.min_liminf_bound) << '\n'
        << "min_limsup_bound=" << fmt17(b.min_limsup_bound) << '\n'
        << "min_limsup_proof_envelope=" << fmt17(min_limsup_proof_envelope(f.lambda, f.d)) << '\n'
        << "max_liminf_bound=" << fmt17(b.max_liminf_bound) << '\n'
        << "max_limsup_bound=" << fmt17(b.max_limsup_bound) << '\n';
  } else if (which == "radius") {
    out << fmt17(containment_radius(f.real_n, f.lambda, f.d, f.epsilon)) << '\n';
  }
  return kExitOk;
}

int cmd_verify(const Flags& f, std::ostream& out) {
  const auto report =
      run_oracle_sweep(f.cases, f.max_n, f.seed, f.threads.value_or(default_threads()));
  for (const auto& line : report.details) out << "MISMATCH " << line << '\n';
  out << "verify: " << report.cases << " cases, " << report.mismatches << " mismatches\n";
  return report.ok() ? kExitOk : kExitMismatch;
}

ExperimentSpec spec_from_flags(const Flags& f) {
  if (f.kind.empty()) throw ValidationError("experiment: kind is required");
  ExperimentSpec spec;
  spec.kind = parse_experiment_kind(f.kind);
  if (!f.exp_d || !f.exp_lambda || f.n_list.empty() || !f.reps || !f.exp_seed)
    throw ValidationError("experiment: --d, --lambda, --n, --reps and --seed are required");
  spec.d = *f.exp_d;
  spec.lambda = *f.exp_lambda;
  spec.n_list = parse_n_list(f.n_list);
  spec.replications = *f.reps;
  spec.base_seed = *f.exp_seed;

  const bool has_c = f.exp_c.has_value();
  const bool has_power = f.alpha || f.beta;
  if (has_c && has_power) throw ValidationError("experiment: --c excludes --alpha/--beta");
  if (has_power && !(f.alpha && f.beta))
    throw ValidationError("experiment: --alpha and --beta must be given together");

  switch (spec.kind) {
    case ExperimentKind::DegreeLaw:
    case ExperimentKind::EdgeSlln:
      if (!has_c) throw ValidationError(f.kind + " requires --c");
      break;
    case ExperimentKind::Threshold:
      if (!has_c && !has_power) throw ValidationError("threshold requires --c or --alpha/--beta");
      break;
    case ExperimentKind::UniformSlln:
    case ExperimentKind::Containment:
      if (has_c || has_power)
        throw ValidationError(f.kind + " takes no edge-distance family (--c/--alpha/--beta)");
      break;
  }
  if (has_c)
    spec.family = EdgeDistanceFamily::log_regime(parse_real(*f.exp_c, "--c"), spec.lambda, spec.d);
  if (has_power)
    spec.family = EdgeDistanceFamily::power_family(*f.alpha, *f.beta, spec.lambda, spec.d);

  if (spec.kind == ExperimentKind::Containment) {
    if (!f.exp_epsilon) throw ValidationError("containment requires --epsilon");
    spec.epsilon = *f.exp_epsilon;
  } else if (f.exp_epsilon) {
    throw ValidationError("--epsilon applies only to containment");
  }
  if (spec.kind == ExperimentKind::UniformSlln) {
    spec.y_grid = f.y_grid.empty() ? default_uniform_y_grid() : parse_real_list(f.y_grid, "--y-grid");
  } else if (!f.y_grid.empty()) {
    throw ValidationError("--y-grid applies only to uniform-slln");
  }
  spec.validate();
  return spec;
}

int cmd_experiment(const Flags& f, std::ostream& out, std::ostream& err) {
  ExperimentSpec spec;
  if (!f.spec_path.empty()) {
    if (f.exp_d || f.exp_lambda || f.exp_c || f.alpha || f.beta || !f.n_list.empty() || f.reps ||
        f.exp_seed || f.exp_epsilon || !f.y_grid.empty())
      throw ValidationError("experiment: --spec cannot be combined with spec flags");
    std::ifstream in(f.spec_path);
    if (!in) throw IoError("cannot open spec '" + f.spec_path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("spec '" + f.spec_path + "': " + e.what());
    }
    spec = spec_from_json(j);
    if (!f.kind.empty() && parse_experiment_kind(f.kind) != spec.kind)
      throw ValidationError("experiment: kind argument disagrees with --spec");
  } else {
    spec = spec_from_flags(f);
  }

  const auto format = parse_table_format(f.format);
  RunOptions options;
  options.threads = f.threads.value_or(default_threads());
  options.log = &err;
  const auto result = run_experiment(spec, options);

  const std::string manifest_path = f.out_path + ".manifest.json";
  emit(result.rows, format, f.out_path);
  write_text_file(manifest_path, make_manifest(result, f.out_path, to_string(format)).dump(2) + "\n");
  out << "table: " << f.out_path << "\nmanifest: " << manifest_path << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponential random geometric graph toolkit", "exprgg"};
  app.require_subcommand(1);
  Flags f;

  auto* sample = app.add_subcommand("sample", "Sample an exponential point cloud");
  sample->add_option("--n", f.n, "Number of points")->required();
  sample->add_option("--d", f.d, "Dimension")->required();
  sample->add_option("--lambda", f.lambda, "Exponential rate")->required();
  sample->add_option("--seed", f.seed, "64-bit seed")->required();
  sample->add_option("--out", f.out_path, "Output path (default: stdout)");

  auto* graph = app.add_subcommand("graph", "Degree summary of one G_n(y)");
  graph->add_option("--n", f.n)->required();
  graph->add_option("--d", f.d)->required();
  graph->add_option("--lambda", f.lambda)->required();
  graph->add_option("--y", f.y, "Edge distance")->required();
  graph->add_option("--seed", f.seed)->required();
  graph->add_option("--format", f.format)->check(CLI::IsMember({"csv", "json"}));
  graph->add_option("--threads", f.threads, "Worker threads (0 = auto)");

  auto* theory = app.add_subcommand("theory", "Evaluate closed-form quantities");
  theory->require_subcommand(1);
  auto* th_p = theory->add_subcommand("p", "Pair connection probability");
  th_p->add_option("--y", f.y)->required();
  th_p->add_option("--lambda", f.lambda)->required();
  th_p->add_option("--d", f.d)->required();
  auto* th_h = theory->add_subcommand("h", "Chernoff rate function H(t)");
  th_h->add_option("--t", f.t, "t > 0 or inf")->required();
  for (const char* name : {"chernoff-upper", "chernoff-lower"}) {
    auto* sub = theory->add_subcommand(name, "Binomial tail bound");
    sub->add_option("--n", f.n)->required();
    sub->add_option("--p", f.p)->required();
    sub->add_option("--k", f.k)->required();
  }
  for (const char* name : {"a-min", "a-max", "bounds"}) {
    auto* sub = theory->add_subcommand(name, "Roots of a log a - a + 1 = 1/(lambda^d c)");
    sub->add_option("--c", f.c, "Regime constant (may be inf)")->required();
    sub->add_option("--lambda", f.lambda)->required();
    sub->add_option("--d", f.d)->required();
  }
  auto* th_radius = theory->add_subcommand("radius", "Containment radius (1+eps) log n/(lambda d)");
  th_radius->add_option("--n", f.real_n)->required();
  th_radius->add_option("--lambda", f.lambda)->required();
  th_radius->add_option("--d", f.d)->required();
  th_radius->add_option("--epsilon", f.epsilon);

  auto* verify = app.add_subcommand("verify", "Grid index vs brute-force oracle sweep");
  verify->add_option("--cases", f.cases)->required();
  verify->add_option("--max-n", f.max_n)->required();
  verify->add_option("--seed", f.seed)->required();
  verify->add_option("--threads", f.threads);

  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo suite");
  experiment->add_option("kind", f.kind, "degree-law|edge-slln|uniform-slln|containment|threshold")
      ->check(CLI::IsMember({"degree-law", "edge-slln", "uniform-slln", "containment", "threshold"}));
  experiment->add_option("--d", f.exp_d);
  experiment->add_option("--lambda", f.exp_lambda);
  experiment->add_option("--c", f.exp_c, "LogRegime constant");
  experiment->add_option("--alpha", f.alpha, "PowerFamily alpha");
  experiment->add_option("--beta", f.beta, "PowerFamily beta");
  experiment->add_option("--n", f.n_list, "Comma-separated n list");
  experiment->add_option("--reps", f.reps, "Replications per n");
  experiment->add_option("--seed", f.exp_seed, "Base seed");
  experiment->add_option("--epsilon", f.exp_epsilon, "Containment radius slack");
  experiment->add_option("--y-grid", f.y_grid, "uniform-slln grid (default 0.05,...,1.0)");
  experiment->add_option("--spec", f.spec_path, "ExperimentSpec or manifest JSON");
  experiment->add_option("--out", f.out_path, "Table path")->required();
  experiment->add_option("--format", f.format)->check(CLI::IsMember({"csv", "json"}));
  experiment->add_option("--threads", f.threads, "Worker threads (0 = auto)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    const CLI::App* deepest = &app;
    while (!deepest->get_subcommands().empty()) deepest = deepest->get_subcommands().front();
    err << "error: " << e.what() << "\n\n" << deepest->help();
    return kExitValidation;
  }

  try {
    if (*sample) return cmd_sample(f, out);
    if (*graph) return cmd_graph(f, out);
    if (*theory) return cmd_theory(theory->get_subcommands().front()->get_name(), f, out);
    if (*verify) return cmd_verify(f, out);
    if (*experiment) return cmd_experiment(f, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitValidation;
}

}  // namespace exprgg
