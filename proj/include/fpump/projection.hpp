#pragma once

#include <vector>

#include "fpump/lp_core.hpp"
#include "fpump/model.hpp"

namespace fpump {

enum class QualityNorm { CoeffNorm, RelaxedOptimum };

struct ProjectionConfig {
  double alpha0 = 1.0;
  double alpha_decay = 0.9;       // geometric decay per iteration
  QualityNorm quality_norm = QualityNorm::RelaxedOptimum;
  double z_star = 0.0;            // cached relaxation optimum
  double alpha_floor = 1e-12;     // alpha snaps to 0 below this
  // Keeps the auxiliary distance variables priced even at alpha = 1, so the
  // solver always drives them down onto |x - x_tilde|. Must stay above the
  // solver's reduced-cost tolerance.
  double min_distance_weight = 1e-7;
};

/// One geometric decay step; values below the floor clamp to exactly 0.
double advance_alpha(double alpha, const ProjectionConfig& cfg);

/// Quality denominator: ||c||_2 in CoeffNorm mode (0 disables the quality
/// term entirely), max(|z*|, 1) in RelaxedOptimum mode.
double quality_denominator(const MipInstance& inst, const ProjectionConfig& cfg);

/// LP that projects the integral point onto the constraint polyhedron:
/// variables x plus one auxiliary d_i >= |x_i - x_tilde_i| per active index,
/// objective (1-alpha) * sum d / sqrt(|active|) + alpha * c'x / Q.
LpProblem build_projection(const MipInstance& inst, const Point& x_tilde,
                           const std::vector<std::size_t>& active, double alpha,
                           const ProjectionConfig& cfg);

struct ProjectionResult {
  SolutionPair pair;
  double distance_sum = 0.0;  // sum of auxiliary values at the LP optimum
  double quality = 0.0;       // c'x at the projected point
  LpBasis basis;
  long lp_iterations = 0;
};

/// Builds and solves the projection LP once. Throws std::logic_error if the
/// LP comes back infeasible or unbounded: the polyhedron was already verified
/// nonempty and bounded in the objective by the relaxation solve.
ProjectionResult project(const MipInstance& inst, const Point& x_tilde,
                         const std::vector<std::size_t>& active, double alpha,
                         const ProjectionConfig& cfg, const LpBasis* warm = nullptr,
                         const LpOptions& opt = {});

/// Reuses the LP skeleton and the previous optimal basis across the
/// consecutive projections of a run; only the auxiliary-row right-hand sides
/// and the objective blend change between calls.
class ProjectionOracle {
public:
  ProjectionOracle(const MipInstance& inst, std::vector<std::size_t> active,
                   ProjectionConfig cfg, LpOptions opt = {});

  ProjectionResult project(const Point& x_tilde, double alpha);

  const std::vector<std::size_t>& active() const { return active_; }

private:
  const MipInstance& inst_;
  std::vector<std::size_t> active_;
  ProjectionConfig cfg_;
  LpOptions opt_;
  LpProblem skeleton_;
  double quality_denom_ = 1.0;
  double delta_norm_ = 1.0;
  LpBasis warm_;
};

}  // namespace fpump
