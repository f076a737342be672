#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fpump/lp_core.hpp"
#include "fpump/model.hpp"
#include "fpump/moves.hpp"
#include "fpump/projection.hpp"

namespace fpump {

enum class StopReason { Feasible, IterLimit, Stagnation, Budget, LpFailure };
const char* to_string(StopReason r);

enum class EnginePhase { Single, Bootstrap, Stage1, Stage2 };
const char* to_string(EnginePhase p);

/// One record per candidate move evaluation; the records of an iteration
/// share its `iter` value and the accepted one (if any) closes it.
struct IterEvent {
  int run = 0;
  int iter = 0;
  double alpha = 0.0;
  MoveKind move = MoveKind::RandomizedRounding;
  double dd_raw = 0.0;
  double dd_norm = 0.0;
  bool accepted = false;
  double fractionality = 0.0;  // of the candidate pair
  double quality = 0.0;        // c'x at the candidate relaxed point
  EnginePhase phase = EnginePhase::Single;
  int hard_count = 0;          // |H| while hard-variable fixing is active
};

/// In-memory sink for per-iteration events, serializable as line-delimited
/// JSON records for the diagnostics plots.
class EventLog {
public:
  void record(const IterEvent& e) { events_.push_back(e); }
  const std::vector<IterEvent>& events() const { return events_; }
  void clear() { events_.clear(); }

  std::string to_jsonl() const;
  static std::vector<IterEvent> parse_jsonl(const std::string& text);

private:
  std::vector<IterEvent> events_;
};

struct StopRules {
  long total_iterations = 5000;  // n_t: global budget per solve
  int run_iterations = 150;      // n_r: cap per run
  int stagnation = 70;           // k: iterations without fractionality improvement
};

struct AnnealParams {
  double p_h = 0.7;        // initial worst-move acceptance target
  double alpha_h = 1.0;    // calibration temperature
  bool calibrate = true;   // false pins the normalization factor to 1
};

struct SolverConfig {
  Tolerances tol;
  StopRules stop;
  ProjectionConfig projection;
  MoveParams moves;
  std::vector<MoveKind> move_list = {MoveKind::RandomizedRounding,
                                     MoveKind::WeakPerturbationDomain,
                                     MoveKind::StrongPerturbationDomain};
  AnnealParams anneal;
  LpOptions lp;
  double time_limit = 0.0;  // wall seconds per solve, 0 = unlimited
};

/// Outcome of one run (one annealing/pump restart).
struct RunResult {
  bool feasible = false;
  StopReason stop = StopReason::IterLimit;
  int iterations = 0;
  double best_fractionality = std::numeric_limits<double>::infinity();
  Point final_relaxed;      // last relaxed point; feeds infeasibility ranks
  Point best_point;         // certified feasible point, when feasible
  double best_objective = std::numeric_limits<double>::infinity();
  double wall_seconds = 0.0;
};

struct RunSummary {
  int run_index = 0;
  EnginePhase phase = EnginePhase::Single;
  bool feasible = false;
  StopReason stop = StopReason::IterLimit;
  int iterations = 0;
  double best_fractionality = 0.0;
  double wall_seconds = 0.0;
  int hard_count = 0;
};

/// Outcome of a full seeded solve (many runs under the iteration budget).
struct SolveReport {
  std::string instance;
  std::string algorithm;
  std::uint64_t seed = 0;
  bool feasible = false;
  Point best_point;
  double best_objective = std::numeric_limits<double>::quiet_NaN();
  long total_iterations = 0;
  double wall_seconds = 0.0;
  std::vector<RunSummary> runs;
  std::string failure;  // nonempty when the solve could not start

  long successful_runs() const;
};

/// Certificate check: returns the first of {integral point, relaxed point
/// with integer coordinates rounded} that is MIP-feasible for inst.
std::optional<Point> certify_feasible(const MipInstance& inst, const Point& relaxed,
                                      const Point& integral, const Tolerances& tol);

}  // namespace fpump
