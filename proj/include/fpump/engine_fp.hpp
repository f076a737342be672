#pragma once

#include "fpump/report.hpp"
#include "fpump/rng.hpp"

namespace fpump {

/// One feasibility-pump run: alternate projection and randomized rounding
/// from the relaxation optimum, perturbing on revisited integral points
/// (weak on an immediate revisit, strong otherwise). `active` restricts the
/// coordinates driven to integrality; `budget` caps the iterations this run
/// may still spend from the global budget.
RunResult fp_run(const MipInstance& inst, const std::vector<std::size_t>& active,
                 const RelaxationResult& relax, const SolverConfig& cfg, Rng& rng,
                 long budget, int run_index = 0, EnginePhase phase = EnginePhase::Single,
                 EventLog* log = nullptr);

/// Repeats fp_run, each run restarting from the cached relaxation optimum
/// with a fresh perturbation stream, until the global iteration budget is
/// spent. Runs keep executing after a success; the best certified solution
/// is tracked across runs.
SolveReport fp_solve(const MipInstance& inst, const SolverConfig& cfg, std::uint64_t seed,
                     EventLog* log = nullptr);

}  // namespace fpump
