#pragma once

#include "fpump/engine_afp.hpp"
#include "fpump/report.hpp"

namespace fpump {

enum class StageOutcome { Stage1Infeasible, Stage2Infeasible, Stage2Feasible };

/// Infeasibility-rank bookkeeping for hard-variable fixing. `ranks` is
/// parallel to inst.integer_set and only ever grows; `hard` holds the n_h
/// variables with the highest ranks, ties broken toward lower index.
struct HardFixState {
  std::vector<long> ranks;
  std::vector<std::size_t> hard;  // variable ids, ascending
  std::size_t n_h = 0;

  void init(const MipInstance& inst) { ranks.assign(inst.integer_set.size(), 0); }
};

/// Increments the rank of every integer variable fractional in the relaxed
/// point of a finished run.
void update_ranks(HardFixState& state, const MipInstance& inst, const Point& relaxed,
                  const Tolerances& tol = {});

/// Rebuilds `hard` as the n_h highest-ranked variables.
void select_hard_set(HardFixState& state, const MipInstance& inst);

/// Stage-outcome resize: shrink to ceil(0.8 n_h) after a stage-1 failure or
/// a stage-2 success, grow to min(ceil(1.2 n_h), |I|) after a stage-2
/// failure; clamped to at least 1 while any rank is positive.
void resize_hard_set(HardFixState& state, const MipInstance& inst, StageOutcome outcome);

/// Stage-1 view: integrality kept on the hard set only.
MipInstance relax_easy_variables(const MipInstance& inst, const std::vector<std::size_t>& hard);

/// Stage-2 view: hard variables pinned (lower = upper = rounded value).
MipInstance fix_hard_variables(const MipInstance& inst, const std::vector<std::size_t>& hard,
                               const Point& values);

enum class Engine { Fp, Afp };

/// Two-stage hard-variable fixing around either engine: bootstrap on the
/// full discrete set until a run fails, rank the fractional variables, then
/// alternate stage 1 (integrality on the hard set only) and stage 2 (hard
/// set fixed at stage-1 values) under the shared iteration budget.
SolveReport twostage_solve(const MipInstance& inst, const SolverConfig& cfg, std::uint64_t seed,
                           Engine engine = Engine::Afp, EventLog* log = nullptr);

}  // namespace fpump
