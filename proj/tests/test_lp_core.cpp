#include <doctest.h>

#include "fpump/lp_core.hpp"
#include "fpump/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace fpump;
using testing::InstanceBuilder;
using testing::VertexEnumerationOracle;

namespace {

LpProblem lp_from(const MipInstance& inst) { return LpProblem::from_instance(inst); }

/// Random LP with integer data, bounded box, mixed senses.
LpProblem random_lp(Rng& rng, std::size_t max_vars = 6, std::size_t max_rows = 6) {
  const std::size_t n = 1 + rng.index(max_vars);
  const std::size_t m = 1 + rng.index(max_rows);
  InstanceBuilder b("random");
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = static_cast<double>(rng.uniform_int(-4, 2));
    const double span = static_cast<double>(rng.uniform_int(1, 6));
    b.var(lo, lo + span, static_cast<double>(rng.uniform_int(-5, 5)));
  }
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<std::pair<std::size_t, double>> entries;
    for (std::size_t j = 0; j < n; ++j) {
      const double c = static_cast<double>(rng.uniform_int(-5, 5));
      if (c != 0.0) entries.emplace_back(j, c);
    }
    if (entries.empty()) entries.emplace_back(rng.index(n), 1.0);
    const double roll = rng.uniform01();
    const RowSense sense = roll < 0.4   ? RowSense::LessEqual
                           : roll < 0.8 ? RowSense::GreaterEqual
                                        : RowSense::Equal;
    b.row(sense, static_cast<double>(rng.uniform_int(-10, 10)), entries);
  }
  return lp_from(b.build());
}

}  // namespace

TEST_SUITE("lp_core") {

TEST_CASE("bounded single-variable optimum") {
  const LpProblem p =
      lp_from(InstanceBuilder().var(0, 5, -1).row(RowSense::LessEqual, 3, {{0, 1}}).build());
  const LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.point[0] == doctest::Approx(3.0));
  CHECK(sol.objective == doctest::Approx(-3.0));
}

TEST_CASE("contradictory rows are infeasible") {
  const LpProblem p = lp_from(InstanceBuilder()
                                  .var(-10, 10, 1)
                                  .row(RowSense::GreaterEqual, 2, {{0, 1}})
                                  .row(RowSense::LessEqual, 1, {{0, 1}})
                                  .build());
  CHECK(solve_lp(p).status == LpStatus::Infeasible);
}

TEST_CASE("open direction is unbounded") {
  const LpProblem p = lp_from(InstanceBuilder().var(0, kInfinity, -1).build());
  CHECK(solve_lp(p).status == LpStatus::Unbounded);
}

TEST_CASE("pure bound flips reach the box corner") {
  const LpProblem p = lp_from(InstanceBuilder().var(0, 5, -1).var(-2, 4, 1).build());
  const LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.point[0] == doctest::Approx(5.0));
  CHECK(sol.point[1] == doctest::Approx(-2.0));
}

TEST_CASE("equality rows hold at the optimum") {
  const LpProblem p = lp_from(InstanceBuilder()
                                  .var(0, 10, 1)
                                  .var(0, 10, 2)
                                  .row(RowSense::Equal, 6, {{0, 1}, {1, 1}})
                                  .row(RowSense::LessEqual, 4, {{0, 1}})
                                  .build());
  const LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.point[0] + sol.point[1] == doctest::Approx(6.0));
  CHECK(sol.objective == doctest::Approx(4.0 + 2.0 * 2.0));
}

TEST_CASE("random LPs match the vertex-enumeration oracle") {
  Rng rng(20240817);
  int optimal_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const LpProblem p = random_lp(rng);
    const LpSolution sol = solve_lp(p);
    const auto oracle = VertexEnumerationOracle::minimize(p);
    if (oracle.feasible) {
      REQUIRE_MESSAGE(sol.status == LpStatus::Optimal, "trial ", trial);
      CHECK_MESSAGE(
          std::fabs(sol.objective - oracle.objective) <= 1e-7 * (1 + std::fabs(oracle.objective)),
          "trial ", trial, ": ", sol.objective, " vs ", oracle.objective);
      ++optimal_seen;
    } else {
      REQUIRE_MESSAGE(sol.status == LpStatus::Infeasible, "trial ", trial);
      ++infeasible_seen;
    }
  }
  // The generator must exercise both outcomes.
  CHECK(optimal_seen > 10);
  CHECK(infeasible_seen > 10);
}

TEST_CASE("optimal points respect bounds and rows") {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const LpProblem p = random_lp(rng);
    const LpSolution sol = solve_lp(p);
    if (sol.status != LpStatus::Optimal) continue;
    for (std::size_t j = 0; j < p.num_vars; ++j) {
      CHECK(sol.point[j] >= p.lower[j] - 1e-6);
      CHECK(sol.point[j] <= p.upper[j] + 1e-6);
    }
  }
}

TEST_CASE("weak duality holds at optima") {
  Rng rng(555);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const LpProblem p = random_lp(rng);
    const LpSolution sol = solve_lp(p);
    if (sol.status != LpStatus::Optimal) continue;
    CHECK(dual_objective(p, sol) <= sol.objective + 1e-7 * (1 + std::fabs(sol.objective)));
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("warm start from the optimal basis resolves in at most one pivot") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const LpProblem p = random_lp(rng);
    const LpSolution first = solve_lp(p);
    if (first.status != LpStatus::Optimal) continue;
    const LpSolution again = solve_lp(p, &first.basis);
    CHECK(again.status == LpStatus::Optimal);
    CHECK(again.iterations <= 1);
    CHECK(again.objective == doctest::Approx(first.objective));
  }
}

TEST_CASE("warm start never changes the status") {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const LpProblem p = random_lp(rng);
    const LpSolution cold = solve_lp(p);
    // A basis token from a different random problem of the same shape.
    const LpProblem q = random_lp(rng);
    LpSolution other = solve_lp(q);
    const LpBasis* warm = other.basis.status.size() == p.num_vars + p.num_rows
                              ? &other.basis
                              : nullptr;
    const LpSolution warmed = solve_lp(p, warm);
    CHECK(warmed.status == cold.status);
    if (cold.status == LpStatus::Optimal) {
      CHECK(warmed.objective == doctest::Approx(cold.objective).epsilon(1e-9));
    }
  }
}

TEST_CASE("identical solves are deterministic") {
  Rng rng(12);
  const LpProblem p = random_lp(rng);
  const LpSolution a = solve_lp(p);
  const LpSolution b = solve_lp(p);
  CHECK(a.status == b.status);
  CHECK(a.iterations == b.iterations);
  if (a.status == LpStatus::Optimal) CHECK(a.point == b.point);
}

TEST_CASE("relaxation drops integrality and caches the optimum") {
  const MipInstance inst = InstanceBuilder("knap")
                               .binary(-3)
                               .binary(-2)
                               .row(RowSense::LessEqual, 1.5, {{0, 1}, {1, 1}})
                               .build();
  const RelaxationResult res = solve_relaxation(inst);
  REQUIRE(res.solution.status == LpStatus::Optimal);
  // Hand solution: both profitable, capacity 1.5 binds, prefer x0: (1, 0.5).
  CHECK(res.solution.point[0] == doctest::Approx(1.0));
  CHECK(res.solution.point[1] == doctest::Approx(0.5));
  CHECK(res.z_star == doctest::Approx(-4.0));
}

TEST_CASE("infeasible relaxation is reported as such") {
  const MipInstance inst = InstanceBuilder()
                               .binary()
                               .row(RowSense::GreaterEqual, 2, {{0, 1}})
                               .build();
  CHECK(solve_relaxation(inst).solution.status == LpStatus::Infeasible);
}

TEST_CASE("degenerate LPs terminate") {
  // Many redundant rows through the same vertex.
  InstanceBuilder b;
  b.var(0, 10, -1).var(0, 10, -1);
  for (int k = 1; k <= 8; ++k) {
    b.row(RowSense::LessEqual, 0, {{0, static_cast<double>(k)}, {1, static_cast<double>(-k)}});
    b.row(RowSense::LessEqual, 10, {{0, 1.0}, {1, static_cast<double>(k)}});
  }
  const LpSolution sol = solve_lp(lp_from(b.build()));
  CHECK(sol.status == LpStatus::Optimal);
}

}  // TEST_SUITE
