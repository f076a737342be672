#include "fpump/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace fpump {

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Feasible: return "feasible";
    case StopReason::IterLimit: return "iter_limit";
    case StopReason::Stagnation: return "stagnation";
    case StopReason::Budget: return "budget";
    case StopReason::LpFailure: return "lp_failure";
  }
  return "unknown";
}

const char* to_string(EnginePhase p) {
  switch (p) {
    case EnginePhase::Single: return "single";
    case EnginePhase::Bootstrap: return "bootstrap";
    case EnginePhase::Stage1: return "stage1";
    case EnginePhase::Stage2: return "stage2";
  }
  return "unknown";
}

std::string EventLog::to_jsonl() const {
  std::string out;
  for (const IterEvent& e : events_) {
    nlohmann::json j{{"run", e.run},
                     {"iter", e.iter},
                     {"alpha", e.alpha},
                     {"move", to_string(e.move)},
                     {"dd_raw", e.dd_raw},
                     {"dd_norm", e.dd_norm},
                     {"accepted", e.accepted},
                     {"fractionality", e.fractionality},
                     {"quality", e.quality},
                     {"phase", to_string(e.phase)},
                     {"hard_count", e.hard_count}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<IterEvent> EventLog::parse_jsonl(const std::string& text) {
  std::vector<IterEvent> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    IterEvent e;
    e.run = j.at("run").get<int>();
    e.iter = j.at("iter").get<int>();
    e.alpha = j.at("alpha").get<double>();
    e.move = move_kind_from_string(j.at("move").get<std::string>());
    e.dd_raw = j.at("dd_raw").get<double>();
    e.dd_norm = j.at("dd_norm").get<double>();
    e.accepted = j.at("accepted").get<bool>();
    e.fractionality = j.at("fractionality").get<double>();
    e.quality = j.value("quality", 0.0);
    const std::string phase = j.value("phase", "single");
    if (phase == "bootstrap") e.phase = EnginePhase::Bootstrap;
    else if (phase == "stage1") e.phase = EnginePhase::Stage1;
    else if (phase == "stage2") e.phase = EnginePhase::Stage2;
    else e.phase = EnginePhase::Single;
    e.hard_count = j.value("hard_count", 0);
    out.push_back(e);
  }
  return out;
}

long SolveReport::successful_runs() const {
  long n = 0;
  for (const RunSummary& r : runs) n += r.feasible ? 1 : 0;
  return n;
}

std::optional<Point> certify_feasible(const MipInstance& inst, const Point& relaxed,
                                      const Point& integral, const Tolerances& tol) {
  if (integral.size() == inst.num_vars && is_mip_feasible(inst, integral, tol)) {
    return integral;
  }
  if (relaxed.size() == inst.num_vars) {
    Point snapped = relaxed;
    for (std::size_t i : inst.integer_set) snapped[i] = round_to_int(snapped[i]);
    if (is_mip_feasible(inst, snapped, tol)) return snapped;
  }
  return std::nullopt;
}

}  // namespace fpump
