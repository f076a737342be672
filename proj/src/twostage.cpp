#include "fpump/twostage.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "engine_detail.hpp"
#include "fpump/engine_fp.hpp"

namespace fpump {

void update_ranks(HardFixState& state, const MipInstance& inst, const Point& relaxed,
                  const Tolerances& tol) {
  if (state.ranks.size() != inst.integer_set.size()) state.init(inst);
  for (std::size_t k = 0; k < inst.integer_set.size(); ++k) {
    if (!near_integer(relaxed[inst.integer_set[k]], tol.eps_int)) state.ranks[k] += 1;
  }
}

void select_hard_set(HardFixState& state, const MipInstance& inst) {
  std::vector<std::size_t> order(inst.integer_set.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (state.ranks[a] != state.ranks[b]) return state.ranks[a] > state.ranks[b];
    return inst.integer_set[a] < inst.integer_set[b];
  });
  state.hard.clear();
  for (std::size_t k = 0; k < state.n_h && k < order.size(); ++k) {
    state.hard.push_back(inst.integer_set[order[k]]);
  }
  std::sort(state.hard.begin(), state.hard.end());
}

void resize_hard_set(HardFixState& state, const MipInstance& inst, StageOutcome outcome) {
  const double n = static_cast<double>(state.n_h);
  std::size_t next;
  switch (outcome) {
    case StageOutcome::Stage2Infeasible:
      next = std::min(static_cast<std::size_t>(std::ceil(1.2 * n)), inst.integer_set.size());
      break;
    case StageOutcome::Stage1Infeasible:
    case StageOutcome::Stage2Feasible:
    default:
      next = static_cast<std::size_t>(std::ceil(0.8 * n));
      break;
  }
  if (next == 0) {
    const bool any_rank = std::any_of(state.ranks.begin(), state.ranks.end(),
                                      [](long r) { return r > 0; });
    next = any_rank ? 1 : 0;  // 0 falls back to single-stage runs
  }
  state.n_h = next;
  select_hard_set(state, inst);
}

MipInstance relax_easy_variables(const MipInstance& inst, const std::vector<std::size_t>& hard) {
  MipInstance sub = inst;
  sub.integer_set = hard;
  sub.finalize();
  return sub;
}

MipInstance fix_hard_variables(const MipInstance& inst, const std::vector<std::size_t>& hard,
                               const Point& values) {
  MipInstance sub = inst;
  for (std::size_t i : hard) {
    const double v = round_to_int(values[i]);
    sub.lower[i] = v;
    sub.upper[i] = v;
  }
  sub.finalize();
  return sub;
}

namespace {

std::vector<std::size_t> easy_complement(const MipInstance& inst,
                                         const std::vector<std::size_t>& hard) {
  std::vector<std::size_t> easy;
  for (std::size_t i : inst.integer_set) {
    if (!std::binary_search(hard.begin(), hard.end(), i)) easy.push_back(i);
  }
  return easy;
}

}  // namespace

SolveReport twostage_solve(const MipInstance& inst, const SolverConfig& cfg, std::uint64_t seed,
                           Engine engine, EventLog* log) {
  detail::Stopwatch watch;
  SolveReport report;
  report.instance = inst.name;
  report.algorithm = engine == Engine::Afp ? "afp2" : "fp2";
  report.seed = seed;

  const RelaxationResult relax = solve_relaxation(inst, cfg.lp);
  if (relax.solution.status != LpStatus::Optimal) {
    report.failure = fmt::format("relaxation {}", to_string(relax.solution.status));
    report.wall_seconds = watch.seconds();
    return report;
  }

  AnnealState anneal;
  anneal.p_h = cfg.anneal.p_h;
  anneal.alpha_h = cfg.anneal.alpha_h;

  HardFixState hard;
  hard.init(inst);

  long used = 0;
  int run_index = 0;

  auto out_of_budget = [&] {
    return used >= cfg.stop.total_iterations ||
           (cfg.time_limit > 0.0 && watch.seconds() >= cfg.time_limit);
  };

  // One engine run on a (possibly modified) instance, with the shared
  // annealing schedule advanced at every run end.
  auto run_once = [&](const MipInstance& sub, const std::vector<std::size_t>& active,
                      const RelaxationResult& sub_relax, EnginePhase phase) {
    Rng rng(seed, static_cast<std::uint64_t>(run_index));
    RunResult run;
    if (engine == Engine::Afp) {
      run = afp_run(sub, active, sub_relax, cfg, anneal, rng, cfg.stop.total_iterations - used,
                    run_index, phase, log, static_cast<int>(hard.n_h));
      finish_run(anneal, run.feasible, cfg.anneal);
    } else {
      run = fp_run(sub, active, sub_relax, cfg, rng, cfg.stop.total_iterations - used,
                   run_index, phase, log);
    }
    used += std::max(1, run.iterations);
    report.total_iterations += run.iterations;
    report.runs.push_back(RunSummary{run_index, phase, run.feasible, run.stop, run.iterations,
                                     run.best_fractionality, run.wall_seconds,
                                     static_cast<int>(hard.n_h)});
    ++run_index;
    return run;
  };

  auto record_if_original_feasible = [&](const Point& candidate) {
    if (candidate.size() != inst.num_vars) return;
    auto cert = certify_feasible(inst, candidate, candidate, cfg.tol);
    if (!cert) return;
    const double obj = inst.objective_value(*cert);
    if (!report.feasible || obj < report.best_objective) {
      report.feasible = true;
      report.best_objective = obj;
      report.best_point = *cert;
    }
  };

  while (!out_of_budget()) {
    if (hard.n_h == 0) {
      RunResult run = run_once(inst, inst.integer_set, relax, EnginePhase::Bootstrap);
      if (run.feasible) {
        record_if_original_feasible(run.best_point);
        continue;  // feasible bootstrap repeats; ranks stay untouched
      }
      if (run.stop == StopReason::LpFailure) break;
      update_ranks(hard, inst, run.final_relaxed, cfg.tol);
      hard.hard.clear();
      for (std::size_t k = 0; k < inst.integer_set.size(); ++k) {
        if (hard.ranks[k] > 0) hard.hard.push_back(inst.integer_set[k]);
      }
      hard.n_h = hard.hard.size();
      continue;
    }

    // Stage 1: integrality on the hard set only.
    const MipInstance stage1 = relax_easy_variables(inst, hard.hard);
    // Same rows and bounds as the original, so its relaxation is too.
    RunResult res1 = run_once(stage1, hard.hard, relax, EnginePhase::Stage1);
    StageOutcome outcome;
    if (res1.feasible) {
      record_if_original_feasible(res1.best_point);
      // Stage 2: hard variables pinned at the stage-1 values.
      const MipInstance stage2 = fix_hard_variables(inst, hard.hard, res1.best_point);
      const RelaxationResult relax2 = solve_relaxation(stage2, cfg.lp);
      if (relax2.solution.status != LpStatus::Optimal) {
        // Fixing made the polyhedron empty; grow the hard set and retry.
        used += 1;
        outcome = StageOutcome::Stage2Infeasible;
      } else {
        const std::vector<std::size_t> easy = easy_complement(inst, hard.hard);
        RunResult res2 = run_once(stage2, easy, relax2, EnginePhase::Stage2);
        if (res2.feasible) {
          record_if_original_feasible(res2.best_point);
          outcome = StageOutcome::Stage2Feasible;
        } else {
          outcome = StageOutcome::Stage2Infeasible;
        }
        update_ranks(hard, inst, res2.final_relaxed, cfg.tol);
      }
    } else {
      update_ranks(hard, inst, res1.final_relaxed, cfg.tol);
      outcome = StageOutcome::Stage1Infeasible;
    }
    resize_hard_set(hard, inst, outcome);
  }

  report.wall_seconds = watch.seconds();
  return report;
}

}  // namespace fpump
