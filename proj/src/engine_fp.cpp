#include "fpump/engine_fp.hpp"

#include <unordered_set>

#include <fmt/format.h>

#include "engine_detail.hpp"

namespace fpump {

namespace {

/// Weak/strong perturbation dispatch: the binary pair on mixed-binary active
/// sets, the domain pair otherwise.
MoveResult perturb(bool weak, const MipInstance& inst, const SolutionPair& pair,
                   const std::vector<std::size_t>& active, Rng& rng, const SolverConfig& cfg,
                   MoveKind& kind_out) {
  const bool binary = all_binary(inst, active);
  if (weak) {
    kind_out = binary ? MoveKind::WeakPerturbation : MoveKind::WeakPerturbationDomain;
    MoveResult r = apply_move(kind_out, inst, pair, active, rng, cfg.moves);
    if (r.applicable) return r;
    // No positive-fractionality candidate left: fall through to strong.
  }
  kind_out = binary ? MoveKind::StrongPerturbation : MoveKind::StrongPerturbationDomain;
  return apply_move(kind_out, inst, pair, active, rng, cfg.moves);
}

}  // namespace

RunResult fp_run(const MipInstance& inst, const std::vector<std::size_t>& active,
                 const RelaxationResult& relax, const SolverConfig& cfg, Rng& rng, long budget,
                 int run_index, EnginePhase phase, EventLog* log) {
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

  ProjectionConfig pcfg = cfg.projection;
  pcfg.z_star = relax.z_star;
  ProjectionOracle oracle(inst, active, pcfg, cfg.lp);

  double alpha = pcfg.alpha0;
  Point x_bar = relax.solution.point;
  MoveResult rounded = randomized_round(inst, x_bar, active, rng, cfg.moves);
  Point x_tilde = rounded.point;

  std::unordered_set<std::vector<long long>, detail::KeyHash> visited;
  std::vector<long long> current_key = detail::integral_key(x_tilde, active);
  visited.insert(current_key);

  if (auto cert = certify_feasible(inst, x_bar, x_tilde, cfg.tol)) {
    record_feasible(*cert);
    res.wall_seconds = watch.seconds();
    return res;
  }

  const int cap = static_cast<int>(std::min<long>(cfg.stop.run_iterations, budget));
  int stagnant = 0;
  try {
    for (int it = 1; it <= cap; ++it) {
      res.iterations = it;
      ProjectionResult pr = oracle.project(x_tilde, alpha);
      alpha = advance_alpha(alpha, pcfg);
      x_bar = pr.pair.relaxed;
      res.final_relaxed = x_bar;

      MoveKind move = MoveKind::RandomizedRounding;
      MoveResult next = randomized_round(inst, x_bar, active, rng, cfg.moves);
      std::vector<long long> next_key = detail::integral_key(next.point, active);
      if (next_key == current_key || visited.contains(next_key)) {
        const bool weak = next_key == current_key;  // cycle of length one
        SolutionPair probe{x_bar, next.point,
                           fractionality(inst, x_bar, next.point, active), pr.quality};
        next = perturb(weak, inst, probe, active, rng, cfg, move);
        next_key = detail::integral_key(next.point, active);
      }
      x_tilde = next.point;
      current_key = std::move(next_key);
      visited.insert(current_key);

      const double frac = fractionality(inst, x_bar, x_tilde, active);
      if (log != nullptr) {
        log->record(IterEvent{run_index, it, alpha, move, 0.0, 0.0, true, frac, pr.quality,
                              phase, 0});
      }
      if (auto cert = certify_feasible(inst, x_bar, x_tilde, cfg.tol)) {
        record_feasible(*cert);
        break;
      }
      if (frac < res.best_fractionality - cfg.tol.eps_int) {
        res.best_fractionality = frac;
        stagnant = 0;
      } else if (++stagnant >= cfg.stop.stagnation) {
        res.stop = StopReason::Stagnation;
        break;
      }
    }
  } catch (const std::logic_error&) {
    res.stop = StopReason::LpFailure;
    res.wall_seconds = watch.seconds();
    return res;
  }
  if (!res.feasible && res.stop != StopReason::Stagnation) {
    res.stop = budget < cfg.stop.run_iterations && res.iterations >= cap ? StopReason::Budget
                                                                         : StopReason::IterLimit;
  }
  res.wall_seconds = watch.seconds();
  return res;
}

SolveReport fp_solve(const MipInstance& inst, const SolverConfig& cfg, std::uint64_t seed,
                     EventLog* log) {
  detail::Stopwatch watch;
  SolveReport report;
  report.instance = inst.name;
  report.algorithm = "fp";
  report.seed = seed;

  RelaxationResult relax = solve_relaxation(inst, cfg.lp);
  if (relax.solution.status != LpStatus::Optimal) {
    report.failure = fmt::format("relaxation {}", to_string(relax.solution.status));
    report.wall_seconds = watch.seconds();
    return report;
  }

  const std::vector<std::size_t>& active = inst.integer_set;
  long used = 0;
  int run_index = 0;
  while (used < cfg.stop.total_iterations) {
    if (cfg.time_limit > 0.0 && watch.seconds() >= cfg.time_limit) break;
    Rng rng(seed, static_cast<std::uint64_t>(run_index));
    RunResult run = fp_run(inst, active, relax, cfg, rng, cfg.stop.total_iterations - used,
                           run_index, EnginePhase::Single, log);
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
    ++run_index;
  }
  report.wall_seconds = watch.seconds();
  return report;
}

}  // namespace fpump
