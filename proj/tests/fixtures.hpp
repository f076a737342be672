#pragma once

// Crafted feasibility fixtures. Every entry of e2e_suite() plants a known
// feasible point, recorded alongside the instance so tests can verify
// feasibility-by-construction before running any heuristic. The special
// fixtures at the bottom are deliberately integrally infeasible.

#include <string>
#include <vector>

#include "fpump/model.hpp"
#include "test_util.hpp"

namespace fpump::testing {

struct Fixture {
  MipInstance instance;
  Point planted;  // feasible by construction
};

inline Fixture setpart6() {
  // Two partition rows plus an odd cover structure across them; the
  // relaxation optimum sits at one-half values, the planted point is whole.
  InstanceBuilder b("setpart6");
  for (double c : {3.0, 2.0, 4.0, 2.0, 3.0, 4.0}) b.binary(c);
  b.row(RowSense::Equal, 1, {{0, 1}, {1, 1}, {2, 1}});
  b.row(RowSense::Equal, 1, {{3, 1}, {4, 1}, {5, 1}});
  b.row(RowSense::GreaterEqual, 1, {{0, 1}, {3, 1}});
  b.row(RowSense::GreaterEqual, 1, {{1, 1}, {4, 1}});
  b.row(RowSense::GreaterEqual, 1, {{0, 1}, {4, 1}});
  return {b.build(), Point({1, 0, 0, 0, 1, 0})};
}

inline Fixture setpart12() {
  // Four partition groups; an odd cover cycle over the group leaders makes
  // the relaxation prefer one-half leader values.
  InstanceBuilder b("setpart12");
  for (int i = 0; i < 12; ++i) b.binary(i % 3 == 0 ? 3.0 : 2.0 + i % 2);
  for (std::size_t g = 0; g < 4; ++g) {
    b.row(RowSense::Equal, 1, {{3 * g, 1}, {3 * g + 1, 1}, {3 * g + 2, 1}});
  }
  b.row(RowSense::GreaterEqual, 1, {{0, 1}, {3, 1}});
  b.row(RowSense::GreaterEqual, 1, {{3, 1}, {6, 1}});
  b.row(RowSense::GreaterEqual, 1, {{6, 1}, {0, 1}});
  return {b.build(), Point({1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0})};
}

inline Fixture knapcover8() {
  // Profit knapsack with a binding capacity (fractional critical item at the
  // relaxation optimum) plus cover rows.
  InstanceBuilder b("knapcover8");
  const double w[8] = {5, 7, 6, 9, 5, 8, 6, 7};
  const double profit[8] = {-5, -4, -6, -3, -5, -4, -6, -3};
  for (int i = 0; i < 8; ++i) b.binary(profit[i]);
  std::vector<std::pair<std::size_t, double>> knap;
  for (std::size_t i = 0; i < 8; ++i) knap.emplace_back(i, w[i]);
  b.row(RowSense::LessEqual, 26, knap);
  b.row(RowSense::GreaterEqual, 1, {{0, 1}, {1, 1}, {2, 1}});
  b.row(RowSense::GreaterEqual, 1, {{3, 1}, {4, 1}, {5, 1}});
  b.row(RowSense::GreaterEqual, 1, {{6, 1}, {7, 1}});
  return {b.build(), Point({1, 0, 1, 0, 1, 0, 1, 0})};  // weight 22 <= 26
}

inline Fixture knapcover20() {
  InstanceBuilder b("knapcover20");
  std::vector<double> w;
  for (int i = 0; i < 20; ++i) {
    w.push_back(4.0 + (i * 7) % 9);
    b.binary(-(1.0 + (i * 3) % 5));  // profits: the capacity binds at the optimum
  }
  std::vector<std::pair<std::size_t, double>> knap;
  for (std::size_t i = 0; i < 20; ++i) knap.emplace_back(i, w[i]);
  b.row(RowSense::LessEqual, 70, knap);
  for (std::size_t g = 0; g < 5; ++g) {
    b.row(RowSense::GreaterEqual, 1,
          {{4 * g, 1}, {4 * g + 1, 1}, {4 * g + 2, 1}, {4 * g + 3, 1}});
  }
  std::vector<double> planted(20, 0.0);
  for (int g = 0; g < 5; ++g) planted[4 * g] = 1.0;  // weight well under capacity
  return {b.build(), Point(planted)};
}

inline Fixture eqint5() {
  // Even coefficients against odd right-hand sides park the relaxation
  // optimum on fractional vertices; integral points sit further in.
  InstanceBuilder b("eqint5");
  const double c[5] = {2, 1, 2, 3, 1};
  for (int i = 0; i < 5; ++i) b.var(0, 5, c[i], true);
  b.row(RowSense::GreaterEqual, -1, {{0, 4}, {1, -2}});
  b.row(RowSense::GreaterEqual, 5, {{0, 4}, {1, 2}});
  b.row(RowSense::Equal, 5, {{0, 1}, {1, 1}, {2, 1}});
  b.row(RowSense::GreaterEqual, 7, {{3, 2}, {4, 2}});
  b.row(RowSense::LessEqual, 4, {{3, 1}, {4, 1}});
  return {b.build(), Point({1, 1, 3, 0, 4})};
}

inline Fixture eqint10() {
  InstanceBuilder b("eqint10");
  for (int i = 0; i < 10; ++i) b.var(0, 8, 1.0 + (i % 3), true);
  b.row(RowSense::Equal, 12, {{0, 1}, {1, 1}, {2, 1}, {3, 1}});
  b.row(RowSense::Equal, 9, {{4, 1}, {5, 1}, {6, 1}});
  b.row(RowSense::Equal, 7, {{7, 1}, {8, 1}, {9, 1}});
  b.row(RowSense::GreaterEqual, 5, {{0, 2}, {4, 2}});   // x0 + x4 >= 2.5 relaxed
  b.row(RowSense::GreaterEqual, 9, {{3, 2}, {9, 2}});   // x3 + x9 >= 4.5 relaxed
  b.row(RowSense::LessEqual, 6, {{0, 1}, {4, 1}});
  return {b.build(), Point({3, 3, 3, 3, 3, 3, 3, 2, 3, 2})};
}

inline Fixture facility12() {
  InstanceBuilder b("facility12");
  for (int j = 0; j < 4; ++j) b.binary(5.0 + j);          // open facility j
  for (int k = 0; k < 8; ++k) b.var(0, 10, 1.0, false);   // shipment x(j, c) at 4 + 2j + c
  const double demand[2] = {6, 8};
  for (std::size_t c = 0; c < 2; ++c) {
    b.row(RowSense::Equal, demand[c],
          {{4 + c, 1}, {6 + c, 1}, {8 + c, 1}, {10 + c, 1}});
  }
  for (std::size_t j = 0; j < 4; ++j) {
    b.row(RowSense::LessEqual, 0, {{4 + 2 * j, 1}, {5 + 2 * j, 1}, {j, -10}});
  }
  std::vector<double> planted(12, 0.0);
  planted[0] = planted[1] = 1.0;  // open facilities 0 and 1
  planted[4] = 6.0;               // x(0, 0)
  planted[7] = 8.0;               // x(1, 1)
  return {b.build(), Point(planted)};
}

inline Fixture assign9() {
  InstanceBuilder b("assign9");
  for (int i = 0; i < 9; ++i) b.binary(1.0 + (i * 2) % 5);
  for (std::size_t r = 0; r < 3; ++r) {
    b.row(RowSense::Equal, 1, {{3 * r, 1}, {3 * r + 1, 1}, {3 * r + 2, 1}});
  }
  for (std::size_t c = 0; c < 3; ++c) {
    b.row(RowSense::Equal, 1, {{c, 1}, {c + 3, 1}, {c + 6, 1}});
  }
  return {b.build(), Point({1, 0, 0, 0, 1, 0, 0, 0, 1})};
}

inline Fixture cover30() {
  InstanceBuilder b("cover30");
  for (int i = 0; i < 30; ++i) b.binary(1.0 + (i % 7));
  for (int r = 0; r < 10; ++r) {
    std::vector<std::pair<std::size_t, double>> entries;
    for (int t = 0; t < 5; ++t) {
      entries.emplace_back(static_cast<std::size_t>((r * 5 + t * 7) % 30), 1.0);
    }
    b.row(RowSense::GreaterEqual, 1, entries);
  }
  // Odd cover cycles: every pairwise cover forces half values in the
  // relaxation, whole points need two of the three variables.
  for (std::size_t base : {0ULL, 12ULL, 21ULL}) {
    b.row(RowSense::GreaterEqual, 1, {{base, 1}, {base + 1, 1}});
    b.row(RowSense::GreaterEqual, 1, {{base + 1, 1}, {base + 2, 1}});
    b.row(RowSense::GreaterEqual, 1, {{base + 2, 1}, {base, 1}});
  }
  return {b.build(), Point(std::vector<double>(30, 1.0))};
}

/// 50 variables: 30 binaries, 12 general integers, 8 continuous. Every
/// right-hand side is derived from the planted point, so feasibility holds
/// by construction.
inline Fixture mixed50() {
  InstanceBuilder b("mixed50");
  std::vector<double> planted(50);
  for (int i = 0; i < 30; ++i) {
    b.binary(1.0 + (i * 5) % 9);
    planted[i] = i % 2 == 0 ? 1.0 : 0.0;
  }
  for (int i = 30; i < 42; ++i) {
    b.var(0, 10, 2.0 + i % 3, true);
    planted[i] = 4.0;
  }
  for (int i = 42; i < 50; ++i) {
    b.var(0, 20, 1.0, false);
    planted[i] = 5.0;
  }

  auto activity = [&](const std::vector<std::pair<std::size_t, double>>& entries) {
    double a = 0.0;
    for (const auto& [c, v] : entries) a += v * planted[c];
    return a;
  };
  auto le_row = [&](const std::vector<std::pair<std::size_t, double>>& e, double slack) {
    b.row(RowSense::LessEqual, activity(e) + slack, e);
  };
  auto ge_row = [&](const std::vector<std::pair<std::size_t, double>>& e, double slack) {
    b.row(RowSense::GreaterEqual, activity(e) - slack, e);
  };
  auto eq_row = [&](const std::vector<std::pair<std::size_t, double>>& e) {
    b.row(RowSense::Equal, activity(e), e);
  };

  for (int r = 0; r < 3; ++r) {
    std::vector<std::pair<std::size_t, double>> e;
    for (std::size_t i = 0; i < 30; ++i) {
      if ((i + r) % 3 == 0) e.emplace_back(i, 3.0 + (i * r) % 5);
    }
    le_row(e, 6.0);
  }
  // Odd cover cycles among binaries keep the relaxation fractional.
  for (std::size_t base : {12ULL, 24ULL}) {
    b.row(RowSense::GreaterEqual, 1, {{base, 1}, {base + 2, 1}});
    b.row(RowSense::GreaterEqual, 1, {{base + 2, 1}, {base + 4, 1}});
    b.row(RowSense::GreaterEqual, 1, {{base + 4, 1}, {base, 1}});
  }
  eq_row({{30, 1}, {31, 1}, {32, 1}, {33, 1}, {34, 1}, {35, 1}});
  eq_row({{36, 1}, {37, 1}, {38, 1}, {39, 1}, {40, 1}, {41, 1}});
  le_row({{42, 1}, {43, 1}, {44, 1}, {45, 1}, {0, -5}, {2, -5}}, 4.0);
  le_row({{46, 1}, {47, 1}, {48, 1}, {49, 1}, {4, -5}, {6, -5}}, 4.0);
  ge_row({{1, 1}, {3, 1}, {5, 1}, {30, 1}}, 2.0);
  ge_row({{7, 1}, {9, 1}, {11, 1}, {36, 1}}, 2.0);
  return {b.build(), Point(planted)};
}

inline std::vector<Fixture> e2e_suite() {
  return {setpart6(), setpart12(), knapcover8(), knapcover20(), eqint5(),
          eqint10(),  facility12(), assign9(),   cover30(),    mixed50()};
}

/// LP-feasible but integrally infeasible: even coefficients, odd right-hand
/// sides. Every run fails, which makes annealing-shape behaviour stable.
inline MipInstance hard_parity(int num_binaries = 24) {
  InstanceBuilder b("hard_parity");
  for (int i = 0; i < num_binaries; ++i) b.binary(1.0);
  for (int r = 0; r < 3; ++r) {
    std::vector<std::pair<std::size_t, double>> e;
    double total = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(num_binaries); ++i) {
      const double coef = 2.0 * (1 + (3 * i + 5 * r + i * i) % 40);
      e.emplace_back(i, coef);
      total += coef;
    }
    const double rhs = 2.0 * std::floor(total / 4.0) + 1.0;  // odd, well inside [0, total]
    b.row(RowSense::Equal, rhs, e);
  }
  return b.build();
}

/// The first two binaries are forced to 0.5 by the rows, so every relaxed
/// point is fractional exactly there; the remaining binaries are free.
inline MipInstance two_hard_binaries() {
  InstanceBuilder b("two_hard");
  for (int i = 0; i < 5; ++i) b.binary(0.0);
  b.row(RowSense::Equal, 1, {{0, 1}, {1, 1}});
  b.row(RowSense::Equal, 0, {{0, 1}, {1, -1}});
  return b.build();
}

/// Tiny objective norm with an unbounded continuous variable: the quality
/// term dwarfs the distance term unless it is rescaled by the relaxation
/// optimum.
inline MipInstance tiny_norm_unbounded() {
  InstanceBuilder b("tiny_norm");
  b.binary(0.0);
  b.binary(0.0);
  b.var(0.0, kInfinity, 1e-4, false);
  b.row(RowSense::GreaterEqual, 1.5, {{0, 2}, {1, 1}});
  b.row(RowSense::GreaterEqual, 1.5, {{0, 1}, {1, 2}});
  b.row(RowSense::GreaterEqual, 0, {{2, 1}, {0, -10000}, {1, -10000}});
  return b.build();
}

}  // namespace fpump::testing
