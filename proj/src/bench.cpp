#include "fpump/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <omp.h>

#include "fpump/engine_afp.hpp"
#include "fpump/engine_fp.hpp"
#include "fpump/mps_io.hpp"

namespace fpump {

namespace {

std::string format_value(double v) {
  if (std::isnan(v)) return "na";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string algorithm_label(const BenchConfig& cfg) {
  return cfg.algorithm == Engine::Afp ? "afp" : "fp";
}

}  // namespace

double compute_gap(double best_found, double reference) {
  return 100.0 * (best_found - reference) / std::max(std::fabs(reference), 1.0);
}

SolveReport run_single(const MipInstance& inst, const BenchConfig& cfg, std::uint64_t seed,
                       EventLog* log) {
  if (cfg.stages == 2) {
    return twostage_solve(inst, cfg.solver, seed, cfg.algorithm, log);
  }
  return cfg.algorithm == Engine::Afp ? afp_solve(inst, cfg.solver, seed, log)
                                      : fp_solve(inst, cfg.solver, seed, log);
}

BenchResult run_experiment(const std::vector<InstanceEntry>& instances, const BenchConfig& cfg) {
  BenchResult result;
  const std::string algo = algorithm_label(cfg);

  struct Job {
    std::size_t instance_index;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!instances[i].error.empty()) {
      result.all_executed = false;
      continue;
    }
    for (std::uint64_t seed : cfg.seeds) jobs.push_back(Job{i, seed});
  }

  std::vector<SolveRecord> records(jobs.size());
  auto run_job = [&](std::size_t j) {
    const Job& job = jobs[j];
    const InstanceEntry& entry = instances[job.instance_index];
    SolveRecord rec;
    rec.instance = entry.name;
    rec.algorithm = algo;
    rec.stages = cfg.stages;
    rec.seed = job.seed;

    EventLog log;
    EventLog* sink = cfg.events_dir.empty() ? nullptr : &log;
    try {
      SolveReport report = run_single(entry.instance, cfg, job.seed, sink);
      rec.feasible = report.feasible;
      rec.best_objective = report.best_objective;
      rec.iterations = report.total_iterations;
      rec.runs = static_cast<long>(report.runs.size());
      rec.successful_runs = report.successful_runs();
      rec.wall_seconds = report.wall_seconds;
      rec.failure = report.failure;
    } catch (const std::exception& e) {
      rec.failure = e.what();
    }
    if (sink != nullptr) {
      const std::string file =
          fmt::format("{}/{}_{}{}_s{}.jsonl", cfg.events_dir, entry.name, algo, cfg.stages,
                      job.seed);
      std::ofstream out(file);
      out << log.to_jsonl();
    }
    records[j] = std::move(rec);
  };

  if (cfg.threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(cfg.threads)
    for (long j = 0; j < static_cast<long>(jobs.size()); ++j) {
      run_job(static_cast<std::size_t>(j));
    }
  } else {
    for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
  }
  result.records = std::move(records);

  // Per-instance aggregation, instance order preserved.
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const InstanceEntry& entry = instances[i];
    if (!entry.error.empty()) continue;
    MetricsRow row;
    row.instance = entry.name;
    row.problem_class = entry.problem_class;
    row.algorithm = algo;
    row.stages = cfg.stages;
    double best = std::numeric_limits<double>::infinity();
    double time_sum = 0.0, time_success = 0.0;
    for (const SolveRecord& rec : result.records) {
      if (rec.instance != entry.name) continue;
      row.seeds += 1;
      row.runs += rec.runs;
      row.successful_runs += rec.successful_runs;
      row.total_iterations += rec.iterations;
      time_sum += rec.wall_seconds;
      if (!rec.failure.empty()) result.all_executed = false;
      if (rec.feasible) {
        row.feasible_seeds += 1;
        time_success += rec.wall_seconds;
        best = std::min(best, rec.best_objective);
      }
    }
    row.success = row.seeds > 0 ? static_cast<double>(row.feasible_seeds) / row.seeds : 0.0;
    row.run_success = row.runs > 0 ? static_cast<double>(row.successful_runs) / row.runs : 0.0;
    row.best_objective =
        row.feasible_seeds > 0 ? best : std::numeric_limits<double>::quiet_NaN();
    if (row.feasible_seeds > 0 && entry.reference.has_value()) {
      row.gap = compute_gap(best, *entry.reference);
    }
    row.mean_time_all = row.seeds > 0 ? time_sum / row.seeds : 0.0;
    row.mean_time_success =
        row.feasible_seeds > 0 ? time_success / row.feasible_seeds : 0.0;
    result.metrics.push_back(std::move(row));
  }
  return result;
}

std::string metrics_csv(const BenchResult& result) {
  std::string out =
      "instance,class,algorithm,stages,seeds,feasible_seeds,success,runs,successful_runs,"
      "run_success,best_objective,gap,total_iterations\n";
  for (const MetricsRow& r : result.metrics) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.instance, r.problem_class,
                       r.algorithm, r.stages, r.seeds, r.feasible_seeds,
                       format_value(r.success), r.runs, r.successful_runs,
                       format_value(r.run_success), format_value(r.best_objective),
                       r.gap ? format_value(*r.gap) : "na", r.total_iterations);
  }
  return out;
}

std::string runs_csv(const BenchResult& result) {
  std::string out =
      "instance,algorithm,stages,seed,feasible,best_objective,iterations,runs,"
      "successful_runs,wall_seconds,failure\n";
  for (const SolveRecord& r : result.records) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{:.6f},{}\n", r.instance, r.algorithm,
                       r.stages, r.seed, r.feasible ? 1 : 0,
                       r.feasible ? format_value(r.best_objective) : "na", r.iterations,
                       r.runs, r.successful_runs, r.wall_seconds, r.failure);
  }
  return out;
}

std::string report_json(const BenchResult& result, const BenchConfig& cfg) {
  nlohmann::json j;
  j["algorithm"] = algorithm_label(cfg);
  j["stages"] = cfg.stages;
  j["threads"] = cfg.threads;
  j["seeds"] = cfg.seeds;
  j["all_executed"] = result.all_executed;
  auto& metrics = j["metrics"] = nlohmann::json::array();
  for (const MetricsRow& r : result.metrics) {
    nlohmann::json row{{"instance", r.instance},
                       {"class", r.problem_class},
                       {"seeds", r.seeds},
                       {"feasible_seeds", r.feasible_seeds},
                       {"success", r.success},
                       {"runs", r.runs},
                       {"successful_runs", r.successful_runs},
                       {"run_success", r.run_success},
                       {"total_iterations", r.total_iterations},
                       {"mean_time_all", r.mean_time_all},
                       {"mean_time_success", r.mean_time_success}};
    if (r.feasible_seeds > 0) row["best_objective"] = r.best_objective;
    if (r.gap) row["gap"] = *r.gap;
    metrics.push_back(std::move(row));
  }
  auto& records = j["records"] = nlohmann::json::array();
  for (const SolveRecord& r : result.records) {
    nlohmann::json row{{"instance", r.instance},
                       {"seed", r.seed},
                       {"feasible", r.feasible},
                       {"iterations", r.iterations},
                       {"runs", r.runs},
                       {"successful_runs", r.successful_runs},
                       {"wall_seconds", r.wall_seconds}};
    if (r.feasible) row["best_objective"] = r.best_objective;
    if (!r.failure.empty()) row["failure"] = r.failure;
    records.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::map<std::string, double> load_references(const std::string& path) {
  std::map<std::string, double> refs;
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open reference file '{}'", path));
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream fields(line);
    std::string name;
    double value;
    if (fields >> name >> value) refs[name] = value;
  }
  return refs;
}

std::vector<InstanceEntry> load_instances(const std::vector<std::string>& paths,
                                          const std::map<std::string, double>& references,
                                          const std::map<std::string, std::string>& classes) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const std::string& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(p)) {
        const std::string f = e.path().string();
        if (f.ends_with(".mps") || f.ends_with(".mps.gz") || f.ends_with(".MPS")) {
          found.push_back(f);
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }

  std::vector<InstanceEntry> out;
  for (const std::string& f : files) {
    InstanceEntry entry;
    entry.path = f;
    try {
      entry.instance = load_instance(f);
      entry.name = entry.instance.name;
    } catch (const std::exception& e) {
      entry.name = fs::path(f).stem().string();
      entry.error = e.what();
    }
    if (auto it = references.find(entry.name); it != references.end()) {
      entry.reference = it->second;
    }
    if (auto it = classes.find(entry.name); it != classes.end()) {
      entry.problem_class = it->second;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

GapComparison compare_gaps(const std::vector<MetricsRow>& a, const std::vector<MetricsRow>& b) {
  GapComparison out;
  for (const MetricsRow& ra : a) {
    const auto rb = std::find_if(b.begin(), b.end(), [&](const MetricsRow& r) {
      return r.instance == ra.instance;
    });
    if (rb == b.end()) continue;
    const std::string label = !ra.problem_class.empty() ? ra.problem_class : "all";
    auto& [wins_a, wins_b] = out.counts[label];
    // A missing gap (no solution or no reference) loses to any finite gap.
    const bool a_has = ra.gap.has_value();
    const bool b_has = rb->gap.has_value();
    if (a_has && (!b_has || *ra.gap < *rb->gap)) {
      wins_a += 1;
      out.total_a += 1;
    } else if (b_has && (!a_has || *rb->gap < *ra.gap)) {
      wins_b += 1;
      out.total_b += 1;
    }
  }
  return out;
}

std::vector<MetricsRow> parse_metrics_csv(const std::string& text) {
  std::vector<MetricsRow> rows;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      first = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() < 13) continue;
    MetricsRow r;
    r.instance = fields[0];
    r.problem_class = fields[1];
    r.algorithm = fields[2];
    r.stages = std::stoi(fields[3]);
    r.seeds = std::stoi(fields[4]);
    r.feasible_seeds = std::stoi(fields[5]);
    r.success = fields[6] == "na" ? 0.0 : std::stod(fields[6]);
    r.runs = std::stol(fields[7]);
    r.successful_runs = std::stol(fields[8]);
    r.run_success = fields[9] == "na" ? 0.0 : std::stod(fields[9]);
    r.best_objective =
        fields[10] == "na" ? std::numeric_limits<double>::quiet_NaN() : std::stod(fields[10]);
    if (fields[11] != "na") r.gap = std::stod(fields[11]);
    r.total_iterations = std::stol(fields[12]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace fpump
