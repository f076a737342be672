#include "fpump/projection.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace fpump {

double advance_alpha(double alpha, const ProjectionConfig& cfg) {
  const double next = alpha * cfg.alpha_decay;
  return next < cfg.alpha_floor ? 0.0 : next;
}

double quality_denominator(const MipInstance& inst, const ProjectionConfig& cfg) {
  if (cfg.quality_norm == QualityNorm::CoeffNorm) {
    double sq = 0.0;
    for (double c : inst.objective) sq += c * c;
    return std::sqrt(sq);  // 0 means: no quality term at all
  }
  return std::max(std::fabs(cfg.z_star), 1.0);
}

namespace {

void set_projection_objective(LpProblem& lp, const MipInstance& inst, std::size_t n_active,
                              double alpha, double quality_denom, double delta_norm,
                              const ProjectionConfig& cfg) {
  const double quality_w = quality_denom > 0.0 ? alpha / quality_denom : 0.0;
  const double distance_w =
      n_active > 0 ? std::max(1.0 - alpha, cfg.min_distance_weight) / delta_norm : 0.0;
  for (std::size_t j = 0; j < inst.num_vars; ++j) {
    lp.objective[j] = quality_w * inst.objective[j];
  }
  for (std::size_t j = 0; j < n_active; ++j) {
    lp.objective[inst.num_vars + j] = distance_w;
  }
}

void set_auxiliary_rhs(LpProblem& lp, const MipInstance& inst, const Point& x_tilde,
                       const std::vector<std::size_t>& active) {
  for (std::size_t j = 0; j < active.size(); ++j) {
    lp.rhs[inst.num_rows + 2 * j] = x_tilde[active[j]];
    lp.rhs[inst.num_rows + 2 * j + 1] = -x_tilde[active[j]];
  }
}

LpProblem build_skeleton(const MipInstance& inst, const std::vector<std::size_t>& active) {
  const std::size_t n = inst.num_vars;
  const std::size_t k = active.size();
  LpProblem lp;
  lp.name = inst.name + ":projection";
  lp.num_vars = n + k;
  lp.num_rows = inst.num_rows + 2 * k;
  lp.objective.assign(n + k, 0.0);
  lp.lower = inst.lower;
  lp.upper = inst.upper;
  lp.row_start = inst.row_start;
  lp.col_index = inst.col_index;
  lp.coef = inst.coef;
  lp.row_sense = inst.row_sense;
  lp.rhs = inst.rhs;

  // Auxiliary variable bounds: |x_i - x_tilde_i| never exceeds the domain
  // span while x_tilde stays inside the box, so a finite box gives the
  // simplex a tight auxiliary range.
  lp.lower.resize(n + k, 0.0);
  lp.upper.resize(n + k, kInfinity);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t i = active[j];
    lp.lower[n + j] = 0.0;
    lp.upper[n + j] = (std::isfinite(inst.lower[i]) && std::isfinite(inst.upper[i]))
                          ? inst.upper[i] - inst.lower[i]
                          : kInfinity;
  }

  // d_j >= x_i - t  and  d_j >= t - x_i  as two <= rows per active index.
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t i = active[j];
    lp.col_index.push_back(i);
    lp.coef.push_back(1.0);
    lp.col_index.push_back(n + j);
    lp.coef.push_back(-1.0);
    lp.row_start.push_back(lp.col_index.size());
    lp.row_sense.push_back(RowSense::LessEqual);
    lp.rhs.push_back(0.0);

    lp.col_index.push_back(i);
    lp.coef.push_back(-1.0);
    lp.col_index.push_back(n + j);
    lp.coef.push_back(-1.0);
    lp.row_start.push_back(lp.col_index.size());
    lp.row_sense.push_back(RowSense::LessEqual);
    lp.rhs.push_back(0.0);
  }
  return lp;
}

ProjectionResult solve_projection(const LpProblem& lp, const MipInstance& inst,
                                  const Point& x_tilde, const std::vector<std::size_t>& active,
                                  const LpBasis* warm, const LpOptions& opt) {
  LpSolution sol = solve_lp(lp, warm, opt);
  if (sol.status != LpStatus::Optimal) {
    throw std::logic_error(fmt::format(
        "projection LP for '{}' came back {}; the relaxation polyhedron was nonempty",
        inst.name, to_string(sol.status)));
  }
  ProjectionResult out;
  std::vector<double> xs(inst.num_vars);
  for (std::size_t i = 0; i < inst.num_vars; ++i) xs[i] = sol.point[i];
  out.pair.relaxed = Point(std::move(xs));
  out.pair.integral = x_tilde;
  out.pair.fractionality = fractionality(inst, out.pair.relaxed, x_tilde, active);
  out.quality = 0.0;
  for (std::size_t i = 0; i < inst.num_vars; ++i) {
    out.quality += inst.objective[i] * out.pair.relaxed[i];
  }
  out.pair.objective_value = out.quality;
  out.distance_sum = 0.0;
  for (std::size_t j = 0; j < active.size(); ++j) {
    out.distance_sum += sol.point[inst.num_vars + j];
  }
  if (std::fabs(out.distance_sum - out.pair.fractionality) >
      1e-6 * (1.0 + std::fabs(out.distance_sum))) {
    throw std::logic_error(
        fmt::format("projection auxiliaries for '{}' are not tight: sum d = {}, distance = {}",
                    inst.name, out.distance_sum, out.pair.fractionality));
  }
  out.basis = std::move(sol.basis);
  out.lp_iterations = sol.iterations;
  return out;
}

}  // namespace

LpProblem build_projection(const MipInstance& inst, const Point& x_tilde,
                           const std::vector<std::size_t>& active, double alpha,
                           const ProjectionConfig& cfg) {
  if (x_tilde.size() != inst.num_vars) {
    throw std::invalid_argument("x_tilde dimension does not match instance");
  }
  LpProblem lp = build_skeleton(inst, active);
  // A caller-supplied point outside the box widens the auxiliary range.
  for (std::size_t j = 0; j < active.size(); ++j) {
    const std::size_t i = active[j];
    if (std::isfinite(lp.upper[inst.num_vars + j])) {
      const double overshoot = std::max(
          0.0, std::max(inst.lower[i] - x_tilde[i], x_tilde[i] - inst.upper[i]));
      lp.upper[inst.num_vars + j] += overshoot;
    }
  }
  const double denom = quality_denominator(inst, cfg);
  const double delta_norm = active.empty() ? 1.0 : std::sqrt(static_cast<double>(active.size()));
  set_projection_objective(lp, inst, active.size(), alpha, denom, delta_norm, cfg);
  set_auxiliary_rhs(lp, inst, x_tilde, active);
  return lp;
}

ProjectionResult project(const MipInstance& inst, const Point& x_tilde,
                         const std::vector<std::size_t>& active, double alpha,
                         const ProjectionConfig& cfg, const LpBasis* warm,
                         const LpOptions& opt) {
  const LpProblem lp = build_projection(inst, x_tilde, active, alpha, cfg);
  return solve_projection(lp, inst, x_tilde, active, warm, opt);
}

ProjectionOracle::ProjectionOracle(const MipInstance& inst, std::vector<std::size_t> active,
                                   ProjectionConfig cfg, LpOptions opt)
    : inst_(inst),
      active_(std::move(active)),
      cfg_(cfg),
      opt_(opt),
      skeleton_(build_skeleton(inst, active_)),
      quality_denom_(quality_denominator(inst, cfg)),
      delta_norm_(active_.empty() ? 1.0 : std::sqrt(static_cast<double>(active_.size()))) {}

ProjectionResult ProjectionOracle::project(const Point& x_tilde, double alpha) {
  set_projection_objective(skeleton_, inst_, active_.size(), alpha, quality_denom_, delta_norm_,
                           cfg_);
  set_auxiliary_rhs(skeleton_, inst_, x_tilde, active_);
  ProjectionResult out = solve_projection(skeleton_, inst_, x_tilde, active_,
                                          warm_.empty() ? nullptr : &warm_, opt_);
  warm_ = out.basis;
  return out;
}

}  // namespace fpump
