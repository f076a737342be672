#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpump/report.hpp"
#include "fpump/twostage.hpp"

namespace fpump {

struct BenchConfig {
  Engine algorithm = Engine::Afp;
  int stages = 2;  // 1: plain solve, 2: hard-variable fixing
  SolverConfig solver;
  std::vector<std::uint64_t> seeds = {1};
  int threads = 1;          // worker pool width; 1 is the serial reference path
  std::string events_dir;   // when set, one JSONL event file per (instance, seed)
};

struct InstanceEntry {
  std::string name;
  std::string path;  // empty for in-memory instances
  MipInstance instance;
  std::optional<double> reference;  // best-known objective for the gap metric
  std::string problem_class;        // optional label for comparison tables
  std::string error;                // nonempty when loading failed
};

/// Per-(instance, seed) outcome; the unit of the success denominator.
struct SolveRecord {
  std::string instance;
  std::string algorithm;
  int stages = 1;
  std::uint64_t seed = 0;
  bool feasible = false;
  double best_objective = 0.0;  // valid when feasible
  long iterations = 0;
  long runs = 0;
  long successful_runs = 0;
  double wall_seconds = 0.0;
  std::string failure;
};

struct MetricsRow {
  std::string instance;
  std::string problem_class;
  std::string algorithm;
  int stages = 1;
  int seeds = 0;
  int feasible_seeds = 0;
  double success = 0.0;      // feasible seeds / seeds
  long runs = 0;
  long successful_runs = 0;
  double run_success = 0.0;  // successful runs / runs
  double best_objective = 0.0;  // valid when feasible_seeds > 0
  std::optional<double> gap;    // absent without a reference or a solution
  long total_iterations = 0;
  double mean_time_all = 0.0;      // mean wall seconds per seeded solve
  double mean_time_success = 0.0;  // mean over feasible solves, 0 if none
};

struct BenchResult {
  std::vector<SolveRecord> records;  // instance-major, seed order
  std::vector<MetricsRow> metrics;
  bool all_executed = true;  // false when any instance failed to load or solve
};

/// 100 * (best - reference) / max(|reference|, 1); negative when the found
/// solution beats the reference.
double compute_gap(double best_found, double reference);

/// One seeded solve with the configured algorithm/stage mode.
SolveReport run_single(const MipInstance& inst, const BenchConfig& cfg, std::uint64_t seed,
                       EventLog* log = nullptr);

/// Runs every (instance, seed) job. With threads > 1 the jobs execute on an
/// OpenMP worker pool; results are identical to the serial path because each
/// job owns its own seed-derived streams and aggregation is order-fixed.
BenchResult run_experiment(const std::vector<InstanceEntry>& instances, const BenchConfig& cfg);

/// Deterministic aggregate table (schema v1, no wall-clock columns).
std::string metrics_csv(const BenchResult& result);
/// Per-seed detail including wall seconds (not byte-reproducible).
std::string runs_csv(const BenchResult& result);
/// Full report including timing means, as a JSON document.
std::string report_json(const BenchResult& result, const BenchConfig& cfg);

/// "name value" sidecar of reference objectives; '#' starts a comment.
std::map<std::string, double> load_references(const std::string& path);

/// Loads instances from paths (directories are scanned for *.mps, *.mps.gz),
/// attaching references and class labels by instance name. Failed loads
/// yield entries with a nonempty error.
std::vector<InstanceEntry> load_instances(const std::vector<std::string>& paths,
                                          const std::map<std::string, double>& references = {},
                                          const std::map<std::string, std::string>& classes = {});

/// Pairwise gap comparison of two metrics tables: per class label, how many
/// instances each side solved to a strictly lower gap.
struct GapComparison {
  // class label -> (strictly lower in a, strictly lower in b)
  std::map<std::string, std::pair<int, int>> counts;
  int total_a = 0;
  int total_b = 0;
};
GapComparison compare_gaps(const std::vector<MetricsRow>& a, const std::vector<MetricsRow>& b);

/// Parses a metrics_csv back into rows (for the compare subcommand).
std::vector<MetricsRow> parse_metrics_csv(const std::string& text);

}  // namespace fpump
