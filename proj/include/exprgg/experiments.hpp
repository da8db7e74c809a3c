#pragma once

// Seeded Monte Carlo suites. Every (n, replication) pair is an independent
// job seeded with derive_replication_seed(base_seed, n_index * replications
// + replication); jobs may run concurrently and rows are collected in
// (n, replication) order, so tables do not depend on the thread count.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "exprgg/core_model.hpp"

namespace exprgg {

inline constexpr const char* kArtifactVersion = "1.0.0";

enum class ExperimentKind { DegreeLaw, EdgeSlln, UniformSlln, Containment, Threshold };

const char* to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& name);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::DegreeLaw;
  std::vector<std::size_t> n_list;
  std::size_t d = 1;
  double lambda = 1.0;
  std::optional<EdgeDistanceFamily> family;  // degree-law, edge-slln, threshold
  std::vector<double> y_grid;                // uniform-slln
  std::size_t replications = 1;
  std::uint64_t base_seed = 0;
  double epsilon = 0.0;                      // containment

  /// Throws ValidationError describing the first violated requirement.
  void validate() const;

  bool operator==(const ExperimentSpec&) const = default;
};

/// The y grid {0.05, 0.10, ..., 1.00}.
std::vector<double> default_uniform_y_grid();

/// One table row. Fields that do not apply to the experiment kind are empty.
struct ResultRow {
  ExperimentKind experiment = ExperimentKind::DegreeLaw;
  std::size_t n = 0;
  std::size_t d = 0;
  double lambda = 0.0;
  std::string family;  // "log", "power", "ygrid" or "none"
  std::optional<double> param1;
  std::optional<double> param2;
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  std::optional<double> y_n;
  std::optional<std::uint64_t> epsilon_n;
  std::optional<std::uint32_t> min_degree;
  std::optional<std::uint32_t> max_degree;
  std::optional<double> min_ratio;
  std::optional<double> max_ratio;
  std::optional<double> p_y;
  std::optional<double> gap;
  std::optional<bool> contained;
  std::optional<bool> has_edge;

  bool operator==(const ResultRow&) const = default;
};

/// Named per-n statistics in a fixed order.
struct SummaryRow {
  std::size_t n = 0;
  std::vector<std::pair<std::string, double>> stats;

  /// Value of a named statistic; throws std::out_of_range if absent.
  double at(const std::string& name) const;
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<ResultRow> rows;
  std::vector<SummaryRow> summary;
  std::optional<TheoryBounds> bounds;  // log-regime families
  std::optional<std::string> series;   // threshold: "converges" / "diverges"
  std::vector<std::string> oracle_notes;

  const SummaryRow& summary_for(std::size_t n) const;
};

struct RunOptions {
  std::size_t threads = 1;  // 0 = hardware concurrency
  std::ostream* log = nullptr;
};

ExperimentResult run_degree_law(const ExperimentSpec& spec, const RunOptions& options = {});
ExperimentResult run_edge_slln(const ExperimentSpec& spec, const RunOptions& options = {});
ExperimentResult run_uniform_slln(const ExperimentSpec& spec, const RunOptions& options = {});
ExperimentResult run_containment(const ExperimentSpec& spec, const RunOptions& options = {});
ExperimentResult run_threshold_dichotomy(const ExperimentSpec& spec,
                                         const RunOptions& options = {});

/// Dispatches on spec.kind.
ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

/// Every coordinate of every point is <= radius.
bool is_contained(const PointCloud& cloud, double radius);

/// No point has all of its coordinates above radius.
bool no_corner_escape(const PointCloud& cloud, double radius);

nlohmann::json spec_to_json(const ExperimentSpec& spec);
/// Accepts either a bare spec object or a run manifest (reads its "spec").
ExperimentSpec spec_from_json(const nlohmann::json& j);

/// Manifest written next to every table: spec, artifact version, bounds,
/// summaries, oracle notes and the table location.
nlohmann::json make_manifest(const ExperimentResult& result, const std::string& table_path,
                             const std::string& format);

}  // namespace exprgg
