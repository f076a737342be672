#pragma once

// Independent reference computations used to pin expected values in tests.
// Nothing here shares code with the solver paths it checks.

#include <cmath>
#include <optional>
#include <vector>

#include "fpump/lp_core.hpp"
#include "fpump/model.hpp"

namespace fpump::testing {

/// Brute-force LP oracle: enumerates every choice of n constraints (rows
/// treated as equalities plus variable bounds), solves the square system,
/// and keeps the best point feasible for the full system. Exact for bounded
/// feasible regions, which always have an optimal vertex.
class VertexEnumerationOracle {
public:
  struct Outcome {
    bool feasible = false;
    double objective = 0.0;
  };

  static Outcome minimize(const LpProblem& p) {
    const std::size_t n = p.num_vars;
    std::vector<std::vector<double>> normals;
    std::vector<double> offsets;
    for (std::size_t r = 0; r < p.num_rows; ++r) {
      std::vector<double> a(n, 0.0);
      for (std::size_t k = p.row_start[r]; k < p.row_start[r + 1]; ++k) {
        a[p.col_index[k]] += p.coef[k];
      }
      normals.push_back(std::move(a));
      offsets.push_back(p.rhs[r]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (std::isfinite(p.lower[j])) {
        std::vector<double> a(n, 0.0);
        a[j] = 1.0;
        normals.push_back(std::move(a));
        offsets.push_back(p.lower[j]);
      }
      if (std::isfinite(p.upper[j])) {
        std::vector<double> a(n, 0.0);
        a[j] = 1.0;
        normals.push_back(a);
        offsets.push_back(p.upper[j]);
      }
    }

    Outcome out;
    std::vector<std::size_t> pick(n);
    enumerate(p, normals, offsets, pick, 0, 0, out);
    return out;
  }

private:
  static void enumerate(const LpProblem& p, const std::vector<std::vector<double>>& normals,
                        const std::vector<double>& offsets, std::vector<std::size_t>& pick,
                        std::size_t depth, std::size_t next, Outcome& out) {
    const std::size_t n = p.num_vars;
    if (depth == n) {
      if (auto x = solve_square(normals, offsets, pick, n)) check_point(p, *x, out);
      return;
    }
    for (std::size_t i = next; i + (n - depth) <= normals.size(); ++i) {
      pick[depth] = i;
      enumerate(p, normals, offsets, pick, depth + 1, i + 1, out);
    }
  }

  static std::optional<std::vector<double>> solve_square(
      const std::vector<std::vector<double>>& normals, const std::vector<double>& offsets,
      const std::vector<std::size_t>& pick, std::size_t n) {
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) a[r][c] = normals[pick[r]][c];
      a[r][n] = offsets[pick[r]];
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < n; ++r) {
        if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
      }
      if (std::fabs(a[piv][col]) < 1e-9) return std::nullopt;  // singular choice
      std::swap(a[piv], a[col]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col) continue;
        const double f = a[r][col] / a[col][col];
        if (f == 0.0) continue;
        for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
      }
    }
    std::vector<double> x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = a[r][n] / a[r][r];
    return x;
  }

  static void check_point(const LpProblem& p, const std::vector<double>& x, Outcome& out) {
    constexpr double tol = 1e-7;
    for (std::size_t j = 0; j < p.num_vars; ++j) {
      if (x[j] < p.lower[j] - tol || x[j] > p.upper[j] + tol) return;
    }
    for (std::size_t r = 0; r < p.num_rows; ++r) {
      double activity = 0.0;
      for (std::size_t k = p.row_start[r]; k < p.row_start[r + 1]; ++k) {
        activity += p.coef[k] * x[p.col_index[k]];
      }
      switch (p.row_sense[r]) {
        case RowSense::LessEqual:
          if (activity > p.rhs[r] + tol) return;
          break;
        case RowSense::GreaterEqual:
          if (activity < p.rhs[r] - tol) return;
          break;
        case RowSense::Equal:
          if (std::fabs(activity - p.rhs[r]) > tol) return;
          break;
      }
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < p.num_vars; ++j) obj += p.objective[j] * x[j];
    if (!out.feasible || obj < out.objective) {
      out.feasible = true;
      out.objective = obj;
    }
  }
};

/// Grid search over the variable box: the smallest L1 distance to x_tilde
/// over the active coordinates among grid points inside the polyhedron.
/// Upper-bounds the true projection distance.
inline double grid_min_distance(const MipInstance& inst, const Point& x_tilde,
                                const std::vector<std::size_t>& active, double step) {
  const std::size_t n = inst.num_vars;
  std::vector<long> counts(n);
  for (std::size_t j = 0; j < n; ++j) {
    counts[j] = static_cast<long>(std::floor((inst.upper[j] - inst.lower[j]) / step)) + 1;
  }
  std::vector<long> idx(n, 0);
  std::vector<double> x(n);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = std::min(inst.lower[j] + idx[j] * step, inst.upper[j]);
    }
    if (lp_violation(inst, Point(x)) <= 1e-9) {
      double d = 0.0;
      for (std::size_t i : active) d += std::fabs(x[i] - x_tilde[i]);
      best = std::min(best, d);
    }
    std::size_t j = 0;
    while (j < n && ++idx[j] >= counts[j]) idx[j++] = 0;
    if (j == n) break;
  }
  return best;
}

/// CDF of the randomized-rounding kernel, by bisection on the monotone
/// kernel itself (no closed form used).
inline double tau_cdf(double t, double (*kernel)(double)) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (kernel(mid) <= t) lo = mid;
    else hi = mid;
  }
  return lo;
}

}  // namespace fpump::testing
