#pragma once

#include "fpump/report.hpp"
#include "fpump/rng.hpp"

namespace fpump {

/// Annealing bookkeeping shared by the runs of one solve. The first run is
/// the calibration run: it uses delta_norm = 1 and tracks the largest
/// fractionality increase any candidate move proposed.
struct AnnealState {
  double p_h = 0.7;
  double alpha_h = 1.0;
  double delta_norm = 1.0;
  double delta_max = 0.0;
  bool calibration_done = false;
};

/// Transition probability: 1 when the move does not worsen fractionality,
/// 0 at zero temperature, exp(-(dd/norm)/alpha) otherwise.
double metropolis_probability(double dd, double alpha, double delta_norm);
bool metropolis_accept(double dd, double alpha, double delta_norm, Rng& rng);

/// Normalization factor making the worst observed move acceptable with
/// probability p_h at temperature alpha_h; 1 when no bad move was seen.
double calibrate_delta_norm(double delta_max, double alpha_h, double p_h);

/// Per-run acceptance-target schedule: tighten toward quality after a
/// success (0.9 p_h), widen the search after a failure (sqrt p_h).
double update_ph(double p_h, bool feasible_found);

/// Applies the end-of-run schedule to the state: p_h update followed by
/// recalibration of delta_norm (kept at 1 while calibration is disabled).
void finish_run(AnnealState& state, bool feasible_found, const AnnealParams& params);

/// One annealed run: start from a random integral point (continuous
/// coordinates from the relaxation optimum), project, then per iteration try
/// the shuffled move list until a candidate passes the Metropolis test.
/// Every candidate costs one projection; the iteration counts once against
/// the budget regardless of how many candidates were tried.
RunResult afp_run(const MipInstance& inst, const std::vector<std::size_t>& active,
                  const RelaxationResult& relax, const SolverConfig& cfg, AnnealState& state,
                  Rng& rng, long budget, int run_index = 0,
                  EnginePhase phase = EnginePhase::Single, EventLog* log = nullptr,
                  int hard_count = 0);

/// Drives runs under the global iteration budget, recalibrating the
/// acceptance normalization after every run.
SolveReport afp_solve(const MipInstance& inst, const SolverConfig& cfg, std::uint64_t seed,
                      EventLog* log = nullptr);

}  // namespace fpump
