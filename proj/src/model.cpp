#include "fpump/model.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace fpump {

Point::Point(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Point entries must be finite");
    }
  }
}

void MipInstance::finalize() {
  if (objective.size() != num_vars || lower.size() != num_vars || upper.size() != num_vars) {
    throw std::invalid_argument("instance vector lengths do not match num_vars");
  }
  if (row_sense.size() != num_rows || rhs.size() != num_rows ||
      row_start.size() != num_rows + 1) {
    throw std::invalid_argument("row structure lengths do not match num_rows");
  }
  for (std::size_t i = 0; i < num_vars; ++i) {
    if (lower[i] > upper[i]) {
      throw std::invalid_argument(fmt::format("variable {} has lower > upper", i));
    }
    if (!std::isfinite(objective[i])) {
      throw std::invalid_argument(fmt::format("variable {} has non-finite objective", i));
    }
  }

  // Canonical row form: per-row entries sorted by column, duplicates merged.
  std::vector<std::size_t> new_start{0};
  std::vector<std::size_t> new_col;
  std::vector<double> new_coef;
  new_start.reserve(num_rows + 1);
  for (std::size_t r = 0; r < num_rows; ++r) {
    if (row_start[r] > row_start[r + 1] || row_start[r + 1] > col_index.size()) {
      throw std::invalid_argument("malformed CSR row offsets");
    }
    std::map<std::size_t, double> entries;
    for (std::size_t k = row_start[r]; k < row_start[r + 1]; ++k) {
      if (col_index[k] >= num_vars) {
        throw std::invalid_argument(fmt::format("row {} references column {} out of range", r, col_index[k]));
      }
      if (!std::isfinite(coef[k])) {
        throw std::invalid_argument(fmt::format("row {} has non-finite coefficient", r));
      }
      entries[col_index[k]] += coef[k];
    }
    for (const auto& [c, v] : entries) {
      new_col.push_back(c);
      new_coef.push_back(v);
    }
    new_start.push_back(new_col.size());
  }
  row_start = std::move(new_start);
  col_index = std::move(new_col);
  coef = std::move(new_coef);

  std::sort(integer_set.begin(), integer_set.end());
  integer_set.erase(std::unique(integer_set.begin(), integer_set.end()), integer_set.end());
  for (std::size_t i : integer_set) {
    if (i >= num_vars) {
      throw std::invalid_argument(fmt::format("integer index {} out of range", i));
    }
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i])) {
      throw std::invalid_argument(
          fmt::format("integer variable {} has an infinite bound; finite domains are required", i));
    }
  }

  binary_set.clear();
  for (std::size_t i : integer_set) {
    if (lower[i] == 0.0 && upper[i] == 1.0) binary_set.push_back(i);
  }
}

bool MipInstance::is_integer_var(std::size_t i) const {
  return std::binary_search(integer_set.begin(), integer_set.end(), i);
}

double MipInstance::objective_value(const Point& p) const {
  double v = objective_offset;
  for (std::size_t i = 0; i < num_vars; ++i) v += objective[i] * p[i];
  return v;
}

double lp_violation(const MipInstance& inst, const Point& p) {
  if (p.size() != inst.num_vars) {
    throw std::invalid_argument("point dimension does not match instance");
  }
  double worst = 0.0;
  for (std::size_t r = 0; r < inst.num_rows; ++r) {
    double activity = 0.0;
    for (std::size_t k = inst.row_start[r]; k < inst.row_start[r + 1]; ++k) {
      activity += inst.coef[k] * p[inst.col_index[k]];
    }
    switch (inst.row_sense[r]) {
      case RowSense::LessEqual:
        worst = std::max(worst, activity - inst.rhs[r]);
        break;
      case RowSense::GreaterEqual:
        worst = std::max(worst, inst.rhs[r] - activity);
        break;
      case RowSense::Equal:
        worst = std::max(worst, std::fabs(activity - inst.rhs[r]));
        break;
    }
  }
  for (std::size_t i = 0; i < inst.num_vars; ++i) {
    if (std::isfinite(inst.lower[i])) worst = std::max(worst, inst.lower[i] - p[i]);
    if (std::isfinite(inst.upper[i])) worst = std::max(worst, p[i] - inst.upper[i]);
  }
  return worst;
}

double fractionality(const MipInstance& inst, const Point& relaxed, const Point& integral,
                     const std::vector<std::size_t>& active) {
  if (relaxed.size() != inst.num_vars || integral.size() != inst.num_vars) {
    throw std::invalid_argument("point dimension does not match instance");
  }
  double total = 0.0;
  for (std::size_t i : active) total += std::fabs(relaxed[i] - integral[i]);
  return total;
}

bool is_mip_feasible(const MipInstance& inst, const Point& p, const Tolerances& tol) {
  if (lp_violation(inst, p) > tol.eps_feas) return false;
  for (std::size_t i : inst.integer_set) {
    if (!near_integer(p[i], tol.eps_int)) return false;
  }
  return true;
}

bool all_binary(const MipInstance& inst, const std::vector<std::size_t>& active) {
  for (std::size_t i : active) {
    if (!(inst.lower[i] == 0.0 && inst.upper[i] == 1.0 && inst.is_integer_var(i))) return false;
  }
  return true;
}

}  // namespace fpump
