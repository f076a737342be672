/**
 * @file fpump_main.cpp
 * @brief Command-line driver: solve, bench, dump, plot, compare.
 */

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "fpump/bench.hpp"
#include "fpump/mps_io.hpp"
#include "fpump/svg_plot.hpp"

namespace {

using namespace fpump;

struct CommonOptions {
  std::string algorithm = "afp";
  int stages = 2;
  long n_t = 5000;
  int n_r = 150;
  int k = 70;
  double alpha_decay = 0.9;
  double p_h = 0.7;
  double alpha_h = 1.0;
  bool no_calibration = false;
  std::string quality_norm = "zstar";
  std::vector<std::string> move_names;
  double time_limit = 0.0;
};

void add_common(CLI::App* app, CommonOptions& opt) {
  app->add_option("--algorithm", opt.algorithm, "fp or afp")->check(CLI::IsMember({"fp", "afp"}));
  app->add_option("--stages", opt.stages, "1 (plain) or 2 (hard-variable fixing)")
      ->check(CLI::IsMember({1, 2}));
  app->add_option("--total-iterations", opt.n_t, "global iteration budget per solve");
  app->add_option("--run-iterations", opt.n_r, "iteration cap per run");
  app->add_option("--stagnation", opt.k, "iterations without improvement ending a run");
  app->add_option("--alpha-decay", opt.alpha_decay, "geometric alpha decay factor");
  app->add_option("--ph", opt.p_h, "initial worst-move acceptance probability");
  app->add_option("--alpha-h", opt.alpha_h, "calibration temperature");
  app->add_flag("--no-calibration", opt.no_calibration,
                "pin the acceptance normalization factor to 1");
  app->add_option("--quality-norm", opt.quality_norm,
                  "quality scaling: zstar (relaxation optimum) or coeff (||c||)")
      ->check(CLI::IsMember({"zstar", "coeff"}));
  app->add_option("--move", opt.move_names,
                  "neighbourhood function (repeatable); default randomized_rounding + "
                  "weak_perturbation_domain + strong_perturbation_domain");
  app->add_option("--time-limit", opt.time_limit, "wall seconds per seeded solve (0 = off)");
}

SolverConfig make_solver_config(const CommonOptions& opt) {
  SolverConfig cfg;
  cfg.stop.total_iterations = opt.n_t;
  cfg.stop.run_iterations = opt.n_r;
  cfg.stop.stagnation = opt.k;
  cfg.projection.alpha_decay = opt.alpha_decay;
  cfg.projection.quality_norm =
      opt.quality_norm == "coeff" ? QualityNorm::CoeffNorm : QualityNorm::RelaxedOptimum;
  cfg.anneal.p_h = opt.p_h;
  cfg.anneal.alpha_h = opt.alpha_h;
  cfg.anneal.calibrate = !opt.no_calibration;
  cfg.time_limit = opt.time_limit;
  if (!opt.move_names.empty()) {
    cfg.move_list.clear();
    for (const std::string& name : opt.move_names) {
      cfg.move_list.push_back(move_kind_from_string(name));
    }
  }
  return cfg;
}

int default_threads() {
  if (const char* env = std::getenv("FPUMP_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

int cmd_solve(const std::string& path, const CommonOptions& opt, std::uint64_t seed,
              const std::string& events_path) {
  const MipInstance inst = load_instance(path);
  BenchConfig cfg;
  cfg.algorithm = opt.algorithm == "fp" ? Engine::Fp : Engine::Afp;
  cfg.stages = opt.stages;
  cfg.solver = make_solver_config(opt);

  EventLog log;
  const SolveReport report =
      run_single(inst, cfg, seed, events_path.empty() ? nullptr : &log);
  if (!events_path.empty()) {
    std::ofstream out(events_path);
    out << log.to_jsonl();
  }

  nlohmann::json j{{"instance", report.instance},
                   {"algorithm", report.algorithm},
                   {"seed", report.seed},
                   {"feasible", report.feasible},
                   {"total_iterations", report.total_iterations},
                   {"runs", report.runs.size()},
                   {"successful_runs", report.successful_runs()},
                   {"wall_seconds", report.wall_seconds}};
  if (report.feasible) {
    j["best_objective"] = report.best_objective;
    j["solution"] = report.best_point.values();
  }
  if (!report.failure.empty()) j["failure"] = report.failure;
  std::cout << j.dump(2) << "\n";
  return report.failure.empty() ? 0 : 1;
}

int cmd_bench(const std::vector<std::string>& paths, const CommonOptions& opt,
              const std::vector<std::uint64_t>& seeds, const std::string& references_path,
              const std::string& classes_path, const std::string& out_dir, int threads,
              bool events) {
  std::map<std::string, double> refs;
  if (!references_path.empty()) refs = load_references(references_path);
  std::map<std::string, std::string> classes;
  if (!classes_path.empty()) {
    std::ifstream in(classes_path);
    std::string name, label;
    while (in >> name >> label) classes[name] = label;
  }

  std::filesystem::create_directories(out_dir);
  BenchConfig cfg;
  cfg.algorithm = opt.algorithm == "fp" ? Engine::Fp : Engine::Afp;
  cfg.stages = opt.stages;
  cfg.solver = make_solver_config(opt);
  cfg.seeds = seeds.empty() ? std::vector<std::uint64_t>{1} : seeds;
  cfg.threads = threads;
  if (events) {
    cfg.events_dir = out_dir + "/events";
    std::filesystem::create_directories(cfg.events_dir);
  }

  const auto instances = load_instances(paths, refs, classes);
  const BenchResult result = run_experiment(instances, cfg);

  std::ofstream(out_dir + "/metrics.csv") << metrics_csv(result);
  std::ofstream(out_dir + "/runs.csv") << runs_csv(result);
  std::ofstream(out_dir + "/report.json") << report_json(result, cfg);

  for (const InstanceEntry& e : instances) {
    if (!e.error.empty()) {
      fmt::print(stderr, "load failed: {}: {}\n", e.path, e.error);
    }
  }
  fmt::print("{}", metrics_csv(result));
  return result.all_executed ? 0 : 1;
}

int cmd_dump(const std::string& path) {
  std::cout << dump_canonical(load_instance(path));
  return 0;
}

int cmd_plot(const std::string& events_path, const std::string& style, int run,
             const std::string& out_path) {
  std::ifstream in(events_path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", events_path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto events = filter_run(EventLog::parse_jsonl(buffer.str()), run);
  const std::string title = fmt::format("{} (run {})", events_path, run);
  const std::string svg = style == "distance" ? render_distance_quality_svg(events, title)
                                              : render_fractionality_svg(events, title);
  std::ofstream(out_path) << svg;
  fmt::print("wrote {}\n", out_path);
  return 0;
}

int cmd_compare(const std::string& a_path, const std::string& b_path) {
  auto read = [](const std::string& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", p));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_metrics_csv(buffer.str());
  };
  const auto a = read(a_path);
  const auto b = read(b_path);
  const GapComparison cmp = compare_gaps(a, b);
  fmt::print("class,lower_gap_{},lower_gap_{}\n", a_path, b_path);
  for (const auto& [label, counts] : cmp.counts) {
    fmt::print("{},{},{}\n", label, counts.first, counts.second);
  }
  fmt::print("total,{},{}\n", cmp.total_a, cmp.total_b);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feasibility pump heuristics for mixed-integer programs"};
  app.require_subcommand(1);

  CommonOptions solve_opt, bench_opt;
  std::string solve_path, solve_events;
  std::uint64_t solve_seed = 1;
  auto* solve = app.add_subcommand("solve", "solve one instance and print a JSON report");
  solve->add_option("instance", solve_path, "MPS file (optionally gzip-compressed)")->required();
  solve->add_option("--seed", solve_seed, "random seed");
  solve->add_option("--events", solve_events, "write per-iteration events (JSONL) here");
  add_common(solve, solve_opt);

  std::vector<std::string> bench_paths;
  std::vector<std::uint64_t> bench_seeds;
  std::string bench_refs, bench_classes, bench_out = "bench-out";
  int bench_threads = default_threads();
  bool bench_events = false;
  auto* bench = app.add_subcommand("bench", "run a benchmark over instances and seeds");
  bench->add_option("instances", bench_paths, "MPS files or directories")->required();
  bench->add_option("--seed", bench_seeds, "seed (repeatable)");
  bench->add_option("--references", bench_refs, "'name value' sidecar of best-known objectives");
  bench->add_option("--classes", bench_classes, "'name label' sidecar of problem classes");
  bench->add_option("--out", bench_out, "output directory");
  bench->add_option("--threads", bench_threads,
                    "worker pool width (default from FPUMP_THREADS, else 1)");
  bench->add_flag("--events", bench_events, "write per-solve event logs");
  add_common(bench, bench_opt);

  std::string dump_path;
  auto* dump = app.add_subcommand("dump", "print the canonical MPS form of an instance");
  dump->add_option("instance", dump_path)->required();

  std::string plot_events, plot_style = "fractionality", plot_out = "plot.svg";
  int plot_run = 0;
  auto* plot = app.add_subcommand("plot", "render diagnostics from an event log to SVG");
  plot->add_option("events", plot_events, "JSONL event log")->required();
  plot->add_option("--style", plot_style, "distance or fractionality")
      ->check(CLI::IsMember({"distance", "fractionality"}));
  plot->add_option("--run", plot_run, "run index to plot");
  plot->add_option("--out", plot_out, "output SVG path");

  std::string cmp_a, cmp_b;
  auto* compare = app.add_subcommand("compare", "pairwise gap comparison of two metrics.csv files");
  compare->add_option("a", cmp_a)->required();
  compare->add_option("b", cmp_b)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(solve_path, solve_opt, solve_seed, solve_events);
    if (bench->parsed()) {
      return cmd_bench(bench_paths, bench_opt, bench_seeds, bench_refs, bench_classes, bench_out,
                       bench_threads, bench_events);
    }
    if (dump->parsed()) return cmd_dump(dump_path);
    if (plot->parsed()) return cmd_plot(plot_events, plot_style, plot_run, plot_out);
    if (compare->parsed()) return cmd_compare(cmp_a, cmp_b);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
  return 0;
}
