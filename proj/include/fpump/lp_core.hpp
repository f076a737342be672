#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpump/model.hpp"

namespace fpump {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

const char* to_string(LpStatus s);

/// Pure LP over the same constraint system role as MipInstance, integrality
/// dropped. Rows are CSR; bounds are handled natively by the solver.
struct LpProblem {
  std::string name;
  std::size_t num_vars = 0;
  std::size_t num_rows = 0;

  std::vector<double> objective;

  std::vector<std::size_t> row_start;
  std::vector<std::size_t> col_index;
  std::vector<double> coef;
  std::vector<RowSense> row_sense;
  std::vector<double> rhs;

  std::vector<double> lower;
  std::vector<double> upper;

  void validate() const;  // throws std::invalid_argument
  static LpProblem from_instance(const MipInstance& inst);
};

/// Opaque warm-start token: simplex status of every structural and slack
/// column. A token from a structurally identical problem lets the next solve
/// start from the previous basis; an incompatible token is ignored.
struct LpBasis {
  std::vector<std::uint8_t> status;
  bool empty() const { return status.empty(); }
};

struct LpSolution {
  LpStatus status = LpStatus::IterLimit;
  Point point;                        // structural values, valid when Optimal
  double objective = 0.0;             // c'x, valid when Optimal
  std::vector<double> duals;          // per row, valid when Optimal
  std::vector<double> reduced_costs;  // per structural+slack column, when Optimal
  LpBasis basis;
  long iterations = 0;
};

struct LpOptions {
  double tol_feas = 1e-9;     // internal primal feasibility tolerance
  double tol_opt = 1e-9;      // reduced-cost tolerance
  double tol_pivot = 1e-10;   // minimum acceptable pivot magnitude
  long max_iterations = 0;    // 0: derived from problem size
  int refactor_interval = 100;
};

/// Bounded-variable revised simplex. Deterministic for fixed input ordering:
/// Dantzig pricing with index tie-breaks, switching to Bland's rule after a
/// degenerate-step streak. The basis inverse is dense, updated in product
/// form and refactorized every refactor_interval pivots; this bounds the
/// practical problem size to a few thousand nonzeros.
LpSolution solve_lp(const LpProblem& p, const LpBasis* warm = nullptr,
                    const LpOptions& opt = {});

/// Objective of the bound-complementary dual solution; <= primal objective
/// for any dual-feasible (optimal) solution.
double dual_objective(const LpProblem& p, const LpSolution& sol);

struct RelaxationResult {
  LpSolution solution;
  double z_star = 0.0;  // c'x at the relaxed optimum, valid when Optimal
};

/// Drops integrality from inst and solves the relaxation; z_star feeds the
/// projection quality normalization.
RelaxationResult solve_relaxation(const MipInstance& inst, const LpOptions& opt = {});

}  // namespace fpump
