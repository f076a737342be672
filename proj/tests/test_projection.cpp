#include <doctest.h>

#include "fpump/projection.hpp"
#include "fpump/rng.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace fpump;
using testing::InstanceBuilder;

namespace {

ProjectionConfig config_for(const MipInstance& inst) {
  ProjectionConfig cfg;
  const RelaxationResult relax = solve_relaxation(inst);
  REQUIRE(relax.solution.status == LpStatus::Optimal);
  cfg.z_star = relax.z_star;
  return cfg;
}

MipInstance simplex_box() {
  // x1 + x2 <= 1 over the unit box, both binary.
  return InstanceBuilder("simplex")
      .binary()
      .binary()
      .row(RowSense::LessEqual, 1, {{0, 1}, {1, 1}})
      .build();
}

}  // namespace

TEST_SUITE("projection") {

TEST_CASE("alpha schedule") {
  const ProjectionConfig cfg;
  CHECK(advance_alpha(1.0, cfg) == doctest::Approx(0.9));
  CHECK(advance_alpha(0.0, cfg) == 0.0);
  double alpha = 1.0;
  for (int n = 1; n <= 30; ++n) {
    const double prev = alpha;
    alpha = advance_alpha(alpha, cfg);
    CHECK(alpha == doctest::Approx(std::pow(0.9, n)));
    CHECK(alpha < prev);  // strictly decreasing until the clamp
  }
  CHECK(advance_alpha(5e-13, cfg) == 0.0);
}

TEST_CASE("quality denominator modes") {
  MipInstance inst = simplex_box();
  inst.objective = {3.0, 4.0};
  ProjectionConfig cfg;
  cfg.quality_norm = QualityNorm::CoeffNorm;
  CHECK(quality_denominator(inst, cfg) == doctest::Approx(5.0));
  cfg.quality_norm = QualityNorm::RelaxedOptimum;
  cfg.z_star = -3.0;
  CHECK(quality_denominator(inst, cfg) == doctest::Approx(3.0));
  cfg.z_star = 0.4;  // small optimum: guarded by the max(.,1)
  CHECK(quality_denominator(inst, cfg) == doctest::Approx(1.0));
  cfg.z_star = 0.0;
  CHECK(quality_denominator(inst, cfg) == doctest::Approx(1.0));
}

TEST_CASE("alpha zero projection is the pure L1 projection") {
  const MipInstance inst = simplex_box();
  const ProjectionConfig cfg = config_for(inst);
  const Point target({1, 1});  // outside the polyhedron
  const ProjectionResult res = project(inst, target, {0, 1}, 0.0, cfg);
  // L1 distance from (1,1) to {x1+x2<=1} is exactly 1, attained on the line.
  CHECK(res.pair.fractionality == doctest::Approx(1.0));
  CHECK(res.distance_sum == doctest::Approx(1.0));
  CHECK(res.pair.relaxed[0] + res.pair.relaxed[1] == doctest::Approx(1.0));
  const double oracle = testing::grid_min_distance(inst, target, {0, 1}, 1e-3);
  CHECK(res.pair.fractionality <= oracle + 1e-3);
}

TEST_CASE("alpha one value-matches the relaxation") {
  const MipInstance inst = InstanceBuilder("quality")
                               .binary(-3)
                               .binary(-2)
                               .row(RowSense::LessEqual, 1.5, {{0, 1}, {1, 1}})
                               .build();
  const RelaxationResult relax = solve_relaxation(inst);
  ProjectionConfig cfg;
  cfg.z_star = relax.z_star;
  const ProjectionResult res = project(inst, Point({0, 0}), {0, 1}, 1.0, cfg);
  CHECK(res.quality == doctest::Approx(relax.z_star).epsilon(1e-6));
}

TEST_CASE("empty active set reduces to the quality LP") {
  const MipInstance inst = simplex_box();
  const ProjectionConfig cfg = config_for(inst);
  const ProjectionResult res = project(inst, Point({0, 0}), {}, 0.5, cfg);
  CHECK(res.pair.fractionality == 0.0);
  CHECK(lp_violation(inst, res.pair.relaxed) <= 1e-6);
}

TEST_CASE("projection outputs are feasible with tight auxiliaries") {
  Rng rng(404);
  const MipInstance inst = testing::knapcover8().instance;
  const ProjectionConfig cfg = config_for(inst);
  const std::vector<std::size_t> active = inst.integer_set;
  double alpha = 1.0;
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> t(inst.num_vars);
    for (auto& v : t) v = static_cast<double>(rng.uniform_int(0, 1));
    const ProjectionResult res = project(inst, Point(t), active, alpha, cfg);
    CHECK(lp_violation(inst, res.pair.relaxed) <= 1e-6);
    CHECK(res.distance_sum == doctest::Approx(res.pair.fractionality).epsilon(1e-9));
    alpha = advance_alpha(alpha, cfg);
  }
}

TEST_CASE("repeated projection with the same inputs is identical") {
  const MipInstance inst = simplex_box();
  const ProjectionConfig cfg = config_for(inst);
  ProjectionOracle oracle(inst, {0, 1}, cfg);
  const ProjectionResult a = oracle.project(Point({1, 1}), 0.5);
  const ProjectionResult b = oracle.project(Point({1, 1}), 0.5);
  CHECK(a.pair.relaxed == b.pair.relaxed);
  CHECK(a.pair.fractionality == b.pair.fractionality);
  // The second call starts from the previous optimal basis.
  CHECK(b.lp_iterations <= 1);
}

TEST_CASE("oracle matches the one-shot builder across a run of targets") {
  const MipInstance inst = testing::eqint5().instance;
  const ProjectionConfig cfg = config_for(inst);
  const std::vector<std::size_t>& active = inst.integer_set;
  ProjectionOracle oracle(inst, active, cfg);
  Rng rng(17);
  double alpha = 1.0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> t(inst.num_vars);
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = static_cast<double>(rng.uniform_int(0, 5));
    }
    const ProjectionResult fresh = project(inst, Point(t), active, alpha, cfg);
    const ProjectionResult warm = oracle.project(Point(t), alpha);
    CHECK(fresh.pair.fractionality == doctest::Approx(warm.pair.fractionality).epsilon(1e-9));
    alpha = advance_alpha(alpha, cfg);
  }
}

TEST_CASE("grid oracle bound holds on random small boxes") {
  Rng rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 1 + rng.index(2);  // 1 or 2 vars at fine resolution
    InstanceBuilder b("grid");
    for (std::size_t j = 0; j < n; ++j) b.var(0, 2, 0, true);
    std::vector<std::pair<std::size_t, double>> entries;
    for (std::size_t j = 0; j < n; ++j) {
      entries.emplace_back(j, static_cast<double>(rng.uniform_int(1, 3)));
    }
    b.row(RowSense::LessEqual, static_cast<double>(rng.uniform_int(1, 4)), entries);
    const MipInstance inst = b.build();
    if (solve_relaxation(inst).solution.status != LpStatus::Optimal) continue;
    const ProjectionConfig cfg = config_for(inst);
    std::vector<std::size_t> active;
    std::vector<double> t(n);
    for (std::size_t j = 0; j < n; ++j) {
      active.push_back(j);
      t[j] = static_cast<double>(rng.uniform_int(0, 2));
    }
    const ProjectionResult res = project(inst, Point(t), active, 0.0, cfg);
    const double oracle = testing::grid_min_distance(inst, Point(t), active, 1e-3);
    CHECK(res.pair.fractionality <= oracle + 1e-3);
  }
}

TEST_CASE("coefficient-norm scaling stalls where the relaxation-optimum scaling converges") {
  const MipInstance inst = testing::tiny_norm_unbounded();
  const RelaxationResult relax = solve_relaxation(inst);
  REQUIRE(relax.solution.status == LpStatus::Optimal);
  REQUIRE(relax.solution.point[0] == doctest::Approx(0.5));
  REQUIRE(relax.solution.point[1] == doctest::Approx(0.5));

  // Deterministic pump loop: nearest-integer rounding plus projection.
  auto drive = [&](QualityNorm norm) {
    ProjectionConfig cfg;
    cfg.quality_norm = norm;
    cfg.z_star = relax.z_star;
    const std::vector<std::size_t> active{0, 1};
    ProjectionOracle oracle(inst, active, cfg);
    Point relaxed = relax.solution.point;
    double alpha = cfg.alpha0;
    std::vector<double> distances;
    for (int it = 0; it < 60; ++it) {
      Point target = relaxed;
      for (std::size_t i : active) target[i] = round_to_int(target[i]);
      const ProjectionResult res = oracle.project(target, alpha);
      distances.push_back(res.pair.fractionality);
      relaxed = res.pair.relaxed;
      alpha = advance_alpha(alpha, cfg);
      if (res.pair.fractionality <= 1e-9) break;
    }
    return distances;
  };

  const auto coeff = drive(QualityNorm::CoeffNorm);
  const auto zstar = drive(QualityNorm::RelaxedOptimum);

  // Coefficient-norm mode: the quality term dominates for the whole window,
  // the distance sits in a flat band and never reaches zero.
  CHECK(coeff.size() == 60);
  const auto [lo, hi] = std::minmax_element(coeff.begin() + 2, coeff.end());
  CHECK(*lo > 0.5);
  CHECK(*hi - *lo <= 0.01);

  // Relaxation-optimum mode drives the distance to zero quickly.
  CHECK(zstar.size() < 25);
  CHECK(zstar.back() <= 1e-9);
}

}  // TEST_SUITE
