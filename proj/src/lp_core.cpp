#include "fpump/lp_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace fpump {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterLimit: return "iter_limit";
  }
  return "unknown";
}

void LpProblem::validate() const {
  if (objective.size() != num_vars || lower.size() != num_vars || upper.size() != num_vars) {
    throw std::invalid_argument("LP vector lengths do not match num_vars");
  }
  if (row_sense.size() != num_rows || rhs.size() != num_rows || row_start.size() != num_rows + 1) {
    throw std::invalid_argument("LP row structure lengths do not match num_rows");
  }
  for (std::size_t i = 0; i < num_vars; ++i) {
    if (!std::isfinite(objective[i])) throw std::invalid_argument("non-finite objective coefficient");
    if (lower[i] > upper[i]) throw std::invalid_argument("LP variable has lower > upper");
  }
  for (std::size_t k = 0; k + 1 < row_start.size(); ++k) {
    if (row_start[k] > row_start[k + 1] || row_start[k + 1] > col_index.size()) {
      throw std::invalid_argument("malformed LP row offsets");
    }
  }
  for (std::size_t c : col_index) {
    if (c >= num_vars) throw std::invalid_argument("LP column index out of range");
  }
}

LpProblem LpProblem::from_instance(const MipInstance& inst) {
  LpProblem p;
  p.name = inst.name;
  p.num_vars = inst.num_vars;
  p.num_rows = inst.num_rows;
  p.objective = inst.objective;
  p.row_start = inst.row_start;
  p.col_index = inst.col_index;
  p.coef = inst.coef;
  p.row_sense = inst.row_sense;
  p.rhs = inst.rhs;
  p.lower = inst.lower;
  p.upper = inst.upper;
  return p;
}

namespace {

enum VarState : std::uint8_t { kAtLower = 0, kAtUpper = 1, kFree = 2, kBasic = 3 };

class Simplex {
public:
  Simplex(const LpProblem& p, const LpOptions& opt) : p_(p), opt_(opt) {
    m_ = p.num_rows;
    n_ = p.num_vars;
    ncols_ = n_ + m_;
    build_columns();
    lower_.resize(ncols_);
    upper_.resize(ncols_);
    cost_.assign(ncols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      lower_[j] = p.lower[j];
      upper_[j] = p.upper[j];
      cost_[j] = p.objective[j];
    }
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t j = n_ + r;
      switch (p.row_sense[r]) {
        case RowSense::LessEqual:
          lower_[j] = 0.0;
          upper_[j] = kInfinity;
          break;
        case RowSense::GreaterEqual:
          lower_[j] = -kInfinity;
          upper_[j] = 0.0;
          break;
        case RowSense::Equal:
          lower_[j] = 0.0;
          upper_[j] = 0.0;
          break;
      }
    }
    max_iter_ = opt.max_iterations > 0
                    ? opt.max_iterations
                    : static_cast<long>(2000 + 100 * (m_ + ncols_));
  }

  LpSolution run(const LpBasis* warm) {
    if (!start_from(warm)) cold_start();

    LpSolution out;
    LpStatus st = iterate(/*phase1=*/true);
    if (st == LpStatus::Optimal) {
      if (total_infeasibility() > feas_threshold()) {
        st = LpStatus::Infeasible;
      } else {
        st = iterate(/*phase1=*/false);
      }
    }
    out.iterations = iterations_;
    out.basis.status.assign(state_.begin(), state_.end());

    if (st == LpStatus::Optimal) {
      // Post-solve certificate: never report Optimal with bound or row
      // violations beyond the model tolerance.
      refactorize();
      compute_basic_values();
      if (total_infeasibility() > 1e-7) {
        out.status = LpStatus::IterLimit;
        return out;
      }
      std::vector<double> xs(n_);
      for (std::size_t j = 0; j < n_; ++j) xs[j] = clamp_to_bounds(j, x_[j]);
      out.point = Point(std::move(xs));
      out.objective = 0.0;
      for (std::size_t j = 0; j < n_; ++j) out.objective += cost_[j] * out.point[j];
      price_duals(out.duals, out.reduced_costs);
      out.status = LpStatus::Optimal;
    } else {
      out.status = st;
    }
    return out;
  }

private:
  void build_columns() {
    // CSC over structural columns plus one unit slack column per row.
    cstart_.assign(ncols_ + 1, 0);
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t k = p_.row_start[r]; k < p_.row_start[r + 1]; ++k) {
        cstart_[p_.col_index[k] + 1]++;
      }
    }
    for (std::size_t j = 0; j < n_; ++j) cstart_[j + 1] += cstart_[j];
    crow_.resize(cstart_[n_] + m_);
    cval_.resize(cstart_[n_] + m_);
    std::vector<std::size_t> fill(n_, 0);
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t k = p_.row_start[r]; k < p_.row_start[r + 1]; ++k) {
        const std::size_t j = p_.col_index[k];
        const std::size_t pos = cstart_[j] + fill[j]++;
        crow_[pos] = r;
        cval_[pos] = p_.coef[k];
      }
    }
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t j = n_ + r;
      cstart_[j + 1] = cstart_[j] + 1;
      crow_[cstart_[j]] = r;
      cval_[cstart_[j]] = 1.0;
    }
  }

  double feas_threshold() const {
    double scale = 1.0;
    for (double b : p_.rhs) scale = std::max(scale, std::fabs(b));
    return 1e-8 * scale;
  }

  VarState default_state(std::size_t j) const {
    if (std::isfinite(lower_[j])) return kAtLower;
    if (std::isfinite(upper_[j])) return kAtUpper;
    return kFree;
  }

  void cold_start() {
    state_.assign(ncols_, kAtLower);
    for (std::size_t j = 0; j < ncols_; ++j) state_[j] = default_state(j);
    basic_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      basic_[r] = n_ + r;
      state_[n_ + r] = kBasic;
    }
    binv_.assign(m_ * m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) binv_[r * m_ + r] = 1.0;
    pivots_since_refactor_ = 0;
    set_nonbasic_values();
    compute_basic_values();
  }

  bool start_from(const LpBasis* warm) {
    if (warm == nullptr || warm->status.size() != ncols_) return false;
    basic_.clear();
    state_.assign(ncols_, kAtLower);
    for (std::size_t j = 0; j < ncols_; ++j) {
      auto s = static_cast<VarState>(warm->status[j]);
      if (s == kBasic) {
        basic_.push_back(j);
        state_[j] = kBasic;
      } else if (s == kAtLower && std::isfinite(lower_[j])) {
        state_[j] = kAtLower;
      } else if (s == kAtUpper && std::isfinite(upper_[j])) {
        state_[j] = kAtUpper;
      } else {
        state_[j] = default_state(j);
      }
    }
    if (basic_.size() != m_) return false;
    if (!refactorize()) return false;
    set_nonbasic_values();
    compute_basic_values();
    return true;
  }

  void set_nonbasic_values() {
    x_.assign(ncols_, 0.0);
    for (std::size_t j = 0; j < ncols_; ++j) {
      switch (state_[j]) {
        case kAtLower: x_[j] = lower_[j]; break;
        case kAtUpper: x_[j] = upper_[j]; break;
        default: x_[j] = 0.0; break;
      }
    }
  }

  void compute_basic_values() {
    std::vector<double> r = p_.rhs;
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (state_[j] == kBasic || x_[j] == 0.0) continue;
      for (std::size_t k = cstart_[j]; k < cstart_[j + 1]; ++k) {
        r[crow_[k]] -= cval_[k] * x_[j];
      }
    }
    for (std::size_t k = 0; k < m_; ++k) {
      double v = 0.0;
      const double* row = &binv_[k * m_];
      for (std::size_t i = 0; i < m_; ++i) v += row[i] * r[i];
      x_[basic_[k]] = v;
    }
  }

  /// Dense Gauss-Jordan inversion of the current basis matrix.
  bool refactorize() {
    if (m_ == 0) {
      pivots_since_refactor_ = 0;
      return true;
    }
    std::vector<double> a(m_ * m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      const std::size_t j = basic_[k];
      for (std::size_t t = cstart_[j]; t < cstart_[j + 1]; ++t) {
        a[crow_[t] * m_ + k] = cval_[t];
      }
    }
    std::vector<double> inv(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) inv[i * m_ + i] = 1.0;
    for (std::size_t col = 0; col < m_; ++col) {
      std::size_t piv = col;
      double best = std::fabs(a[col * m_ + col]);
      for (std::size_t r = col + 1; r < m_; ++r) {
        const double cand = std::fabs(a[r * m_ + col]);
        if (cand > best) {
          best = cand;
          piv = r;
        }
      }
      if (best < 1e-11) return false;
      if (piv != col) {
        for (std::size_t c = 0; c < m_; ++c) {
          std::swap(a[piv * m_ + c], a[col * m_ + c]);
          std::swap(inv[piv * m_ + c], inv[col * m_ + c]);
        }
      }
      const double d = 1.0 / a[col * m_ + col];
      for (std::size_t c = 0; c < m_; ++c) {
        a[col * m_ + c] *= d;
        inv[col * m_ + c] *= d;
      }
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == col) continue;
        const double f = a[r * m_ + col];
        if (f == 0.0) continue;
        for (std::size_t c = 0; c < m_; ++c) {
          a[r * m_ + c] -= f * a[col * m_ + c];
          inv[r * m_ + c] -= f * inv[col * m_ + c];
        }
      }
    }
    // binv maps row space to basis positions: binv = (column-ordered B)^-1.
    // a was assembled as B[row][pos], so inv rows are positions already.
    binv_ = std::move(inv);
    pivots_since_refactor_ = 0;
    return true;
  }

  double infeasibility_of(std::size_t j) const {
    const double v = x_[j];
    if (v < lower_[j]) return lower_[j] - v;
    if (v > upper_[j]) return v - upper_[j];
    return 0.0;
  }

  double total_infeasibility() const {
    double total = 0.0;
    for (std::size_t k = 0; k < m_; ++k) total += infeasibility_of(basic_[k]);
    return total;
  }

  /// Phase-aware cost of the basic variable at position k.
  double basic_cost(std::size_t k, bool phase1) const {
    const std::size_t j = basic_[k];
    if (phase1) {
      if (x_[j] < lower_[j] - opt_.tol_feas) return -1.0;
      if (x_[j] > upper_[j] + opt_.tol_feas) return 1.0;
      return 0.0;
    }
    return cost_[j];
  }

  void compute_y(std::vector<double>& y, bool phase1) const {
    y.assign(m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      const double cb = basic_cost(k, phase1);
      if (cb == 0.0) continue;
      const double* row = &binv_[k * m_];
      for (std::size_t i = 0; i < m_; ++i) y[i] += cb * row[i];
    }
  }

  double reduced_cost(std::size_t j, const std::vector<double>& y, bool phase1) const {
    double d = phase1 ? 0.0 : cost_[j];
    for (std::size_t k = cstart_[j]; k < cstart_[j + 1]; ++k) d -= y[crow_[k]] * cval_[k];
    return d;
  }

  LpStatus iterate(bool phase1) {
    std::vector<double> y, w;
    long degenerate_streak = 0;
    bool bland = false;
    while (true) {
      if (iterations_ >= max_iter_) return LpStatus::IterLimit;
      if (phase1 && total_infeasibility() <= feas_threshold()) {
        snap_basics_into_bounds();
        return LpStatus::Optimal;
      }

      compute_y(y, phase1);

      // Entering choice: Dantzig on |reduced cost| with index tie-break,
      // Bland's rule once a degeneracy streak trips.
      std::size_t enter = ncols_;
      int dir = 0;
      double best = opt_.tol_opt;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (state_[j] == kBasic) continue;
        if (upper_[j] - lower_[j] <= 0.0) continue;  // fixed column
        const double d = reduced_cost(j, y, phase1);
        int cand_dir = 0;
        if (state_[j] == kAtLower && d < -opt_.tol_opt) cand_dir = 1;
        else if (state_[j] == kAtUpper && d > opt_.tol_opt) cand_dir = -1;
        else if (state_[j] == kFree && std::fabs(d) > opt_.tol_opt) cand_dir = d < 0 ? 1 : -1;
        if (cand_dir == 0) continue;
        if (bland) {
          enter = j;
          dir = cand_dir;
          break;
        }
        if (std::fabs(d) > best) {
          best = std::fabs(d);
          enter = j;
          dir = cand_dir;
        }
      }
      if (enter == ncols_) {
        if (phase1) {
          // No descent direction left; remaining infeasibility is minimal.
          return total_infeasibility() > feas_threshold() ? LpStatus::Infeasible
                                                          : LpStatus::Optimal;
        }
        return LpStatus::Optimal;
      }

      // w = binv * A_enter.
      w.assign(m_, 0.0);
      for (std::size_t t = cstart_[enter]; t < cstart_[enter + 1]; ++t) {
        const std::size_t r = crow_[t];
        const double v = cval_[t];
        for (std::size_t k = 0; k < m_; ++k) w[k] += binv_[k * m_ + r] * v;
      }

      // Ratio test: nearest blocking event among basic bounds (phase 1 lets
      // an infeasible basic run to the bound it violates, not past it), or
      // the entering variable's own opposite bound.
      double step = kInfinity;
      std::size_t leave_pos = m_;
      double leave_bound = 0.0;
      bool leave_at_upper = false;
      const double own_range = upper_[enter] - lower_[enter];
      if (std::isfinite(own_range)) step = own_range;

      for (std::size_t k = 0; k < m_; ++k) {
        if (std::fabs(w[k]) <= opt_.tol_pivot) continue;
        const std::size_t bj = basic_[k];
        const double rate = -dir * w[k];  // d x_bj / d t
        const double v = x_[bj];
        double t = kInfinity;
        double bound = 0.0;
        bool at_upper = false;
        if (phase1 && v < lower_[bj] - opt_.tol_feas) {
          if (rate > 0) {
            t = (lower_[bj] - v) / rate;
            bound = lower_[bj];
          }
        } else if (phase1 && v > upper_[bj] + opt_.tol_feas) {
          if (rate < 0) {
            t = (upper_[bj] - v) / rate;
            bound = upper_[bj];
            at_upper = true;
          }
        } else if (rate > 0) {
          if (std::isfinite(upper_[bj])) {
            t = std::max(0.0, (upper_[bj] - v) / rate);
            bound = upper_[bj];
            at_upper = true;
          }
        } else {
          if (std::isfinite(lower_[bj])) {
            t = std::max(0.0, (lower_[bj] - v) / rate);
            bound = lower_[bj];
          }
        }
        if (t < step - 1e-12 ||
            (t < step + 1e-12 && leave_pos < m_ &&
             std::fabs(w[k]) > std::fabs(w[leave_pos]))) {
          step = t;
          leave_pos = k;
          leave_bound = bound;
          leave_at_upper = at_upper;
        }
      }

      if (!std::isfinite(step)) {
        // In phase 1 the objective is bounded below by zero, so a missing
        // blocking event can only be numerical; treat it as a stall.
        return phase1 ? LpStatus::IterLimit : LpStatus::Unbounded;
      }

      ++iterations_;
      // Apply the step.
      x_[enter] += dir * step;
      for (std::size_t k = 0; k < m_; ++k) {
        if (w[k] != 0.0) x_[basic_[k]] -= dir * step * w[k];
      }
      if (leave_pos == m_) {
        // Bound flip: entering variable crossed to its other bound.
        state_[enter] = dir > 0 ? kAtUpper : kAtLower;
        x_[enter] = dir > 0 ? upper_[enter] : lower_[enter];
      } else {
        const std::size_t leaving = basic_[leave_pos];
        x_[leaving] = leave_bound;
        state_[leaving] = leave_at_upper ? kAtUpper : kAtLower;
        basic_[leave_pos] = enter;
        state_[enter] = kBasic;
        update_binv(w, leave_pos);
        if (++pivots_since_refactor_ >= opt_.refactor_interval) {
          if (!refactorize()) return LpStatus::IterLimit;
          compute_basic_values();
        }
      }

      if (step <= 1e-12) {
        if (++degenerate_streak >= 40) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }
    }
  }

  void update_binv(const std::vector<double>& w, std::size_t pos) {
    const double piv = w[pos];
    double* prow = &binv_[pos * m_];
    const double inv_piv = 1.0 / piv;
    for (std::size_t c = 0; c < m_; ++c) prow[c] *= inv_piv;
    for (std::size_t k = 0; k < m_; ++k) {
      if (k == pos) continue;
      const double f = w[k];
      if (f == 0.0) continue;
      double* row = &binv_[k * m_];
      for (std::size_t c = 0; c < m_; ++c) row[c] -= f * prow[c];
    }
  }

  void snap_basics_into_bounds() {
    for (std::size_t k = 0; k < m_; ++k) {
      const std::size_t j = basic_[k];
      if (x_[j] < lower_[j]) x_[j] = lower_[j];
      if (x_[j] > upper_[j]) x_[j] = upper_[j];
    }
  }

  double clamp_to_bounds(std::size_t j, double v) const {
    return std::min(std::max(v, lower_[j]), upper_[j]);
  }

  void price_duals(std::vector<double>& duals, std::vector<double>& reduced) const {
    std::vector<double> y;
    compute_y(y, /*phase1=*/false);
    duals = y;
    reduced.resize(ncols_);
    for (std::size_t j = 0; j < ncols_; ++j) {
      reduced[j] = state_[j] == kBasic ? 0.0 : reduced_cost(j, y, /*phase1=*/false);
    }
  }

  const LpProblem& p_;
  const LpOptions& opt_;
  std::size_t m_ = 0, n_ = 0, ncols_ = 0;

  std::vector<std::size_t> cstart_, crow_;
  std::vector<double> cval_;
  std::vector<double> lower_, upper_, cost_;

  std::vector<std::size_t> basic_;
  std::vector<std::uint8_t> state_;
  std::vector<double> x_;
  std::vector<double> binv_;
  int pivots_since_refactor_ = 0;
  long iterations_ = 0;
  long max_iter_ = 0;
};

}  // namespace

LpSolution solve_lp(const LpProblem& p, const LpBasis* warm, const LpOptions& opt) {
  p.validate();
  Simplex solver(p, opt);
  return solver.run(warm);
}

double dual_objective(const LpProblem& p, const LpSolution& sol) {
  if (sol.status != LpStatus::Optimal) {
    throw std::invalid_argument("dual_objective requires an optimal solution");
  }
  double v = 0.0;
  for (std::size_t r = 0; r < p.num_rows; ++r) v += sol.duals[r] * p.rhs[r];
  // Nonbasic columns sit at a bound; their reduced cost prices that bound.
  for (std::size_t j = 0; j < sol.reduced_costs.size(); ++j) {
    const double d = sol.reduced_costs[j];
    if (d == 0.0) continue;
    double bound;
    if (j < p.num_vars) {
      bound = d > 0 ? p.lower[j] : p.upper[j];
    } else {
      const RowSense s = p.row_sense[j - p.num_vars];
      if (s == RowSense::Equal) bound = 0.0;
      else bound = 0.0;  // slack bounds are 0 on their finite side
    }
    if (std::isfinite(bound)) v += d * bound;
  }
  return v;
}

RelaxationResult solve_relaxation(const MipInstance& inst, const LpOptions& opt) {
  RelaxationResult out;
  out.solution = solve_lp(LpProblem::from_instance(inst), nullptr, opt);
  if (out.solution.status == LpStatus::Optimal) out.z_star = out.solution.objective;
  return out;
}

}  // namespace fpump
