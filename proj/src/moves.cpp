#include "fpump/moves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace fpump {

const char* to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::RandomizedRounding: return "randomized_rounding";
    case MoveKind::WeakPerturbation: return "weak_perturbation";
    case MoveKind::StrongPerturbation: return "strong_perturbation";
    case MoveKind::WeakPerturbationDomain: return "weak_perturbation_domain";
    case MoveKind::StrongPerturbationDomain: return "strong_perturbation_domain";
  }
  return "unknown";
}

MoveKind move_kind_from_string(const std::string& name) {
  for (MoveKind k :
       {MoveKind::RandomizedRounding, MoveKind::WeakPerturbation, MoveKind::StrongPerturbation,
        MoveKind::WeakPerturbationDomain, MoveKind::StrongPerturbationDomain}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument(fmt::format("unknown move kind '{}'", name));
}

double window_size(double domain, const MoveParams& params) {
  return std::max(params.window_abs, params.window_rel * domain);
}

double tau(double omega) {
  const double core = 2.0 * omega * (1.0 - omega);
  return omega <= 0.5 ? core : 1.0 - core;
}

namespace {

constexpr double kFracNoise = 1e-9;  // below this a coordinate counts as integral

long int_lower(const MipInstance& inst, std::size_t i) {
  return static_cast<long>(std::ceil(inst.lower[i] - 1e-9));
}

long int_upper(const MipInstance& inst, std::size_t i) {
  return static_cast<long>(std::floor(inst.upper[i] + 1e-9));
}

double clamp_integer(const MipInstance& inst, std::size_t i, double v) {
  const double lo = static_cast<double>(int_lower(inst, i));
  const double hi = static_cast<double>(int_upper(inst, i));
  return std::min(std::max(v, lo), std::max(lo, hi));
}

/// Uniform integer draw on [lo, hi] intersected with the variable's integer
/// box; falls back to the clamped rounded relaxed value on an empty interval.
double draw_integer_in(const MipInstance& inst, std::size_t i, double lo, double hi,
                       double fallback, Rng& rng) {
  long ilo = std::max(int_lower(inst, i), static_cast<long>(std::ceil(lo - 1e-9)));
  long ihi = std::min(int_upper(inst, i), static_cast<long>(std::floor(hi + 1e-9)));
  if (ilo > ihi) return clamp_integer(inst, i, round_to_int(fallback));
  return static_cast<double>(rng.uniform_int(ilo, ihi));
}

struct RankedVar {
  std::size_t var;
  double score;
};

/// Variables with positive fractionality, highest score first, index ties low first.
std::vector<RankedVar> ranked_candidates(const MipInstance& inst, const SolutionPair& pair,
                                         const std::vector<std::size_t>& active,
                                         bool normalize_by_domain) {
  std::vector<RankedVar> out;
  for (std::size_t i : active) {
    const double frac = std::fabs(pair.relaxed[i] - pair.integral[i]);
    if (frac <= kFracNoise) continue;
    const double score =
        normalize_by_domain ? frac / std::max(inst.domain_size(i), 1.0) : frac;
    out.push_back({i, score});
  }
  std::stable_sort(out.begin(), out.end(), [](const RankedVar& a, const RankedVar& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.var < b.var;
  });
  return out;
}

/// Picks how many and which of the ranked candidates to perturb: the draw
/// count m ~ U(ceil(T/2), floor(3T/2)) with T = ceil(fraction * list), then m
/// distinct entries sampled from the top floor(3T/2) of the list.
std::vector<std::size_t> pick_from_ranked(const std::vector<RankedVar>& ranked, Rng& rng,
                                          const MoveParams& params) {
  const long len = static_cast<long>(ranked.size());
  const long t = static_cast<long>(std::ceil(params.t_fraction * static_cast<double>(len)));
  const long lo = std::max<long>(1, (t + 1) / 2);
  const long hi = std::max<long>(lo, (3 * t) / 2);
  long m = rng.uniform_int(lo, hi);
  const long pool = std::min<long>(len, std::max<long>(1, (3 * t) / 2));
  m = std::min(m, pool);
  std::vector<std::size_t> chosen;
  for (std::size_t pos : rng.sample_without_replacement(static_cast<std::size_t>(pool),
                                                        static_cast<std::size_t>(m))) {
    chosen.push_back(ranked[pos].var);
  }
  return chosen;
}

double flip_binary(double v) { return round_to_int(v) > 0.5 ? 0.0 : 1.0; }

}  // namespace

MoveResult randomized_round(const MipInstance& inst, const Point& relaxed,
                            const std::vector<std::size_t>& active, Rng& rng,
                            const MoveParams&) {
  MoveResult out;
  out.point = relaxed;
  for (std::size_t i : active) {
    const double t = tau(rng.uniform01());
    out.point[i] = clamp_integer(inst, i, std::floor(relaxed[i] + t));
    out.touched.push_back(i);
  }
  return out;
}

MoveResult weak_perturb_binary(const MipInstance& inst, const SolutionPair& pair,
                               const std::vector<std::size_t>& active, Rng& rng,
                               const MoveParams& params) {
  MoveResult out;
  out.point = pair.integral;
  const auto ranked = ranked_candidates(inst, pair, active, /*normalize_by_domain=*/false);
  if (ranked.empty()) {
    out.applicable = false;
    return out;
  }
  for (std::size_t i : pick_from_ranked(ranked, rng, params)) {
    out.point[i] = flip_binary(out.point[i]);
    out.touched.push_back(i);
  }
  return out;
}

MoveResult strong_perturb_binary(const MipInstance& inst, const SolutionPair& pair,
                                 const std::vector<std::size_t>& active, Rng& rng,
                                 const MoveParams& params) {
  (void)inst;
  MoveResult out;
  out.point = pair.integral;
  for (std::size_t i : active) {
    const double omega = rng.uniform(params.strong_lo, params.strong_hi);
    const double frac = std::fabs(pair.relaxed[i] - pair.integral[i]);
    if (frac + std::max(0.0, omega) > 0.5) {
      out.point[i] = flip_binary(out.point[i]);
      out.touched.push_back(i);
    }
  }
  return out;
}

MoveResult weak_perturb_domain(const MipInstance& inst, const SolutionPair& pair,
                               const std::vector<std::size_t>& active, Rng& rng,
                               const MoveParams& params) {
  MoveResult out;
  out.point = pair.integral;
  const auto ranked = ranked_candidates(inst, pair, active, /*normalize_by_domain=*/true);
  if (ranked.empty()) {
    out.applicable = false;
    return out;
  }
  for (std::size_t i : pick_from_ranked(ranked, rng, params)) {
    const double w = window_size(inst.domain_size(i), params);
    const double xbar = pair.relaxed[i];
    const bool up = xbar >= pair.integral[i];
    const double lo = up ? xbar : xbar - w;
    const double hi = up ? xbar + w : xbar;
    out.point[i] = draw_integer_in(inst, i, lo, hi, xbar, rng);
    out.touched.push_back(i);
  }
  return out;
}

MoveResult strong_perturb_domain(const MipInstance& inst, const SolutionPair& pair,
                                 const std::vector<std::size_t>& active, Rng& rng,
                                 const MoveParams& params) {
  MoveResult out;
  out.point = pair.integral;
  if (active.empty()) {
    out.applicable = false;
    return out;
  }
  const std::size_t count = (active.size() + 1) / 2;
  for (std::size_t pos : rng.sample_without_replacement(active.size(), count)) {
    const std::size_t i = active[pos];
    const double domain = inst.domain_size(i);
    const double w = window_size(domain, params);
    const double xbar = pair.relaxed[i];
    const double xtil = pair.integral[i];
    const double lo_b = inst.lower[i];
    const double hi_b = inst.upper[i];
    double lo, hi;
    // First matching case wins.
    if (domain < params.small_domain && xbar >= xtil) {
      lo = xbar;
      hi = hi_b;
    } else if (domain < params.small_domain) {
      lo = lo_b;
      hi = xbar;
    } else if (hi_b - xtil <= params.edge_fraction * domain) {
      lo = hi_b - w;
      hi = hi_b;
    } else if (xtil - lo_b <= params.edge_fraction * domain) {
      lo = lo_b;
      hi = lo_b + w;
    } else {
      lo = xbar - w;
      hi = xbar + w;
    }
    out.point[i] = draw_integer_in(inst, i, lo, hi, xbar, rng);
    out.touched.push_back(i);
  }
  return out;
}

bool move_applicable(MoveKind kind, const MipInstance& inst,
                     const std::vector<std::size_t>& active) {
  switch (kind) {
    case MoveKind::WeakPerturbation:
    case MoveKind::StrongPerturbation:
      return !active.empty() && all_binary(inst, active);
    default:
      return !active.empty();
  }
}

MoveResult apply_move(MoveKind kind, const MipInstance& inst, const SolutionPair& pair,
                      const std::vector<std::size_t>& active, Rng& rng,
                      const MoveParams& params) {
  switch (kind) {
    case MoveKind::RandomizedRounding:
      return randomized_round(inst, pair.relaxed, active, rng, params);
    case MoveKind::WeakPerturbation:
      return weak_perturb_binary(inst, pair, active, rng, params);
    case MoveKind::StrongPerturbation:
      return strong_perturb_binary(inst, pair, active, rng, params);
    case MoveKind::WeakPerturbationDomain:
      return weak_perturb_domain(inst, pair, active, rng, params);
    case MoveKind::StrongPerturbationDomain:
      return strong_perturb_domain(inst, pair, active, rng, params);
  }
  throw std::invalid_argument("unknown move kind");
}

}  // namespace fpump
