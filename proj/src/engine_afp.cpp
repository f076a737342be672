#include "fpump/engine_afp.hpp"

#include <cmath>

#include <fmt/format.h>

#include "engine_detail.hpp"

namespace fpump {

double metropolis_probability(double dd, double alpha, double delta_norm) {
  if (dd <= 0.0) return 1.0;
  if (alpha <= 0.0) return 0.0;
  return std::exp(-(dd / delta_norm) / alpha);
}

bool metropolis_accept(double dd, double alpha, double delta_norm, Rng& rng) {
  if (dd <= 0.0) return true;
  if (alpha <= 0.0) return false;
  return rng.uniform01() < metropolis_probability(dd, alpha, delta_norm);
}

double calibrate_delta_norm(double delta_max, double alpha_h, double p_h) {
  if (delta_max <= 0.0) return 1.0;  // no bad move was ever proposed
  return delta_max / (alpha_h * (-std::log(p_h)));
}

double update_ph(double p_h, bool feasible_found) {
  return feasible_found ? 0.9 * p_h : std::sqrt(p_h);
}

void finish_run(AnnealState& state, bool feasible_found, const AnnealParams& params) {
  state.calibration_done = true;
  state.p_h = update_ph(state.p_h, feasible_found);
  state.delta_norm =
      params.calibrate ? calibrate_delta_norm(state.delta_max, state.alpha_h, state.p_h) : 1.0;
}

namespace {

/// Random initial integral point: integer-uniform per active variable,
/// continuous coordinates taken from the relaxation optimum.
Point random_integral_start(const MipInstance& inst, const std::vector<std::size_t>& active,
                            const Point& relaxed_opt, Rng& rng) {
  Point p = relaxed_opt;
  for (std::size_t i : active) {
    const long lo = static_cast<long>(std::ceil(inst.lower[i] - 1e-9));
    const long hi = static_cast<long>(std::floor(inst.upper[i] + 1e-9));
    p[i] = static_cast<double>(hi < lo ? lo : rng.uniform_int(lo, hi));
  }
  return p;
}

}  // namespace

RunResult afp_run(const MipInstance& inst, const std::vector<std::size_t>& active,
                  const RelaxationResult& relax, const SolverConfig& cfg, AnnealState& state,
                  Rng& rng, long budget, int run_index, EnginePhase phase, EventLog* log,
                  int hard_count) {
  detail::Stopwatch watch;
  RunResult res;
  if (relax.solution.status != LpStatus::Optimal) {
    res.stop = StopReason::LpFailure;
    res.wall_seconds = watch.seconds();
    return res;
  }

  auto record_feasible = [&](const Point& cert) {
    res.feasible = true;
    res.stop = StopReason::Feasible;
    res.best_point = cert;
    res.best_objective = inst.objective_value(cert);
    res.best_fractionality = 0.0;
  };

  res.final_relaxed = relax.solution.point;
  if (active.empty()) {
    if (auto cert = certify_feasible(inst, relax.solution.point, relax.solution.point, cfg.tol)) {
      record_feasible(*cert);
    }
    res.wall_seconds = watch.seconds();
    return res;
  }

  // Binary-only moves are never offered on active sets with general-integer
  // variables.
  std::vector<MoveKind> moves;
  for (MoveKind kind : cfg.move_list) {
    if (move_applicable(kind, inst, active)) moves.push_back(kind);
  }
  if (moves.empty()) moves.push_back(MoveKind::RandomizedRounding);

  ProjectionConfig pcfg = cfg.projection;
  pcfg.z_star = relax.z_star;
  ProjectionOracle oracle(inst, active, pcfg, cfg.lp);

  double alpha = pcfg.alpha0;
  const bool calibration_run = !state.calibration_done;

  try {
    Point start = random_integral_start(inst, active, relax.solution.point, rng);
    ProjectionResult init = oracle.project(start, alpha);
    SolutionPair pair = init.pair;
    res.final_relaxed = pair.relaxed;
    res.best_fractionality = pair.fractionality;

    if (auto cert = certify_feasible(inst, pair.relaxed, pair.integral, cfg.tol)) {
      record_feasible(*cert);
      res.wall_seconds = watch.seconds();
      return res;
    }

    const int cap = static_cast<int>(std::min<long>(cfg.stop.run_iterations, budget));
    int stagnant = 0;
    std::vector<MoveKind> order = moves;
    for (int it = 1; it <= cap; ++it) {
      res.iterations = it;
      rng.shuffle(order);
      for (MoveKind kind : order) {
        MoveResult mv = apply_move(kind, inst, pair, active, rng, cfg.moves);
        if (!mv.applicable) continue;
        ProjectionResult cand = oracle.project(mv.point, alpha);
        const double dd = cand.pair.fractionality - pair.fractionality;
        if (calibration_run && dd > state.delta_max) state.delta_max = dd;
        const bool accepted = metropolis_accept(dd, alpha, state.delta_norm, rng);
        if (log != nullptr) {
          log->record(IterEvent{run_index, it, alpha, kind, dd, dd / state.delta_norm,
                                accepted, cand.pair.fractionality, cand.quality, phase,
                                hard_count});
        }
        if (accepted) {
          pair = cand.pair;
          break;
        }
      }
      // List exhausted without acceptance leaves the pair unchanged; alpha
      // still decays.
      alpha = advance_alpha(alpha, pcfg);
      res.final_relaxed = pair.relaxed;

      if (auto cert = certify_feasible(inst, pair.relaxed, pair.integral, cfg.tol)) {
        record_feasible(*cert);
        break;
      }
      if (pair.fractionality < res.best_fractionality - cfg.tol.eps_int) {
        res.best_fractionality = pair.fractionality;
        stagnant = 0;
      } else if (++stagnant >= cfg.stop.stagnation) {
        res.stop = StopReason::Stagnation;
        break;
      }
    }
    if (!res.feasible && res.stop != StopReason::Stagnation) {
      res.stop = budget < cfg.stop.run_iterations && res.iterations >= cap
                     ? StopReason::Budget
                     : StopReason::IterLimit;
    }
  } catch (const std::logic_error&) {
    res.stop = StopReason::LpFailure;
  }
  res.wall_seconds = watch.seconds();
  return res;
}

SolveReport afp_solve(const MipInstance& inst, const SolverConfig& cfg, std::uint64_t seed,
                      EventLog* log) {
  detail::Stopwatch watch;
  SolveReport report;
  report.instance = inst.name;
  report.algorithm = "afp";
  report.seed = seed;

  RelaxationResult relax = solve_relaxation(inst, cfg.lp);
  if (relax.solution.status != LpStatus::Optimal) {
    report.failure = fmt::format("relaxation {}", to_string(relax.solution.status));
    report.wall_seconds = watch.seconds();
    return report;
  }

  AnnealState state;
  state.p_h = cfg.anneal.p_h;
  state.alpha_h = cfg.anneal.alpha_h;

  const std::vector<std::size_t>& active = inst.integer_set;
  long used = 0;
  int run_index = 0;
  while (used < cfg.stop.total_iterations) {
    if (cfg.time_limit > 0.0 && watch.seconds() >= cfg.time_limit) break;
    Rng rng(seed, static_cast<std::uint64_t>(run_index));
    RunResult run = afp_run(inst, active, relax, cfg, state, rng,
                            cfg.stop.total_iterations - used, run_index, EnginePhase::Single,
                            log);
    used += std::max(1, run.iterations);
    report.total_iterations += run.iterations;
    report.runs.push_back(RunSummary{run_index, EnginePhase::Single, run.feasible, run.stop,
                                     run.iterations, run.best_fractionality, run.wall_seconds,
                                     0});
    if (run.feasible &&
        (!report.feasible || run.best_objective < report.best_objective)) {
      report.feasible = true;
      report.best_objective = run.best_objective;
      report.best_point = run.best_point;
    }
    finish_run(state, run.feasible, cfg.anneal);
    ++run_index;
  }
  report.wall_seconds = watch.seconds();
  return report;
}

}  // namespace fpump
