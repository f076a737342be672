#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace fpump {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense : char { LessEqual = 'L', GreaterEqual = 'G', Equal = 'E' };

struct Tolerances {
  double eps_int = 1e-6;   // integrality tolerance
  double eps_feas = 1e-6;  // constraint/bound feasibility tolerance
};

/// Dense point in variable space. Entries must be finite.
class Point {
public:
  Point() = default;
  explicit Point(std::vector<double> values);
  static Point zeros(std::size_t n) { return Point(std::vector<double>(n, 0.0)); }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  bool operator==(const Point& other) const = default;

private:
  std::vector<double> values_;
};

/// Immutable sparse MIP instance
///
///   min c'x  s.t.  rows (<=, >=, =),  lower <= x <= upper,
///                  x_i integer for i in integer_set.
///
/// Rows are stored CSR with per-row entries sorted by column and duplicates
/// merged. Variable bounds are kept explicit rather than folded into the row
/// system; every routine that measures violation treats them as implicit
/// constraints. Safe to share across threads once built.
struct MipInstance {
  std::string name;
  std::size_t num_vars = 0;
  std::size_t num_rows = 0;

  std::vector<double> objective;       // length num_vars
  double objective_offset = 0.0;       // constant term, reporting only

  // CSR row storage.
  std::vector<std::size_t> row_start;  // length num_rows + 1
  std::vector<std::size_t> col_index;
  std::vector<double> coef;

  std::vector<RowSense> row_sense;     // length num_rows
  std::vector<double> rhs;             // length num_rows

  std::vector<double> lower;           // length num_vars, -inf allowed
  std::vector<double> upper;           // length num_vars, +inf allowed

  std::vector<std::size_t> integer_set;  // ascending indices of discrete vars
  std::vector<std::size_t> binary_set;   // derived: {i in I : lower=0, upper=1}

  /// Validates invariants, sorts row entries, derives binary_set.
  /// Throws std::invalid_argument on violations (including unbounded
  /// integer variables, which the perturbation moves cannot handle).
  void finalize();

  bool is_integer_var(std::size_t i) const;
  double domain_size(std::size_t i) const { return upper[i] - lower[i]; }
  double objective_value(const Point& p) const;

  bool operator==(const MipInstance& other) const = default;
};

/// A relaxed/integral solution pair with its L1 distance over the discrete
/// coordinates that are currently being driven to integrality.
struct SolutionPair {
  Point relaxed;
  Point integral;
  double fractionality = 0.0;
  double objective_value = 0.0;
};

/// Max violation of p over all rows and variable bounds; 0 means p is in the
/// LP polyhedron (up to roundoff). Throws on dimension mismatch.
double lp_violation(const MipInstance& inst, const Point& p);

/// Sum over `active` of |relaxed_i - integral_i|.
double fractionality(const MipInstance& inst, const Point& relaxed, const Point& integral,
                     const std::vector<std::size_t>& active);

/// True iff p satisfies rows and bounds within eps_feas and every variable in
/// the full integer set is within eps_int of an integer.
bool is_mip_feasible(const MipInstance& inst, const Point& p, const Tolerances& tol = {});

inline double round_to_int(double v) { return std::floor(v + 0.5); }

inline bool near_integer(double v, double eps) { return std::fabs(v - round_to_int(v)) <= eps; }

/// True iff every index in `active` is a binary variable of inst.
bool all_binary(const MipInstance& inst, const std::vector<std::size_t>& active);

}  // namespace fpump
