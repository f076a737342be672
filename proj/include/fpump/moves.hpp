#pragma once

#include <vector>

#include "fpump/model.hpp"
#include "fpump/rng.hpp"

namespace fpump {

/// Neighbourhood functions mapping the current solution pair to a new
/// integral point. The two binary kinds apply only when every active
/// variable is binary; the domain kinds work for general finite domains.
enum class MoveKind {
  RandomizedRounding,
  WeakPerturbation,
  StrongPerturbation,
  WeakPerturbationDomain,
  StrongPerturbationDomain,
};

const char* to_string(MoveKind kind);
MoveKind move_kind_from_string(const std::string& name);

struct MoveParams {
  double t_fraction = 0.1;      // weak perturbation: T = ceil(fraction * list)
  double strong_lo = -0.3;      // strong binary draw range U(lo, hi)
  double strong_hi = 0.7;
  double window_abs = 50.0;     // w_i = max(window_abs, window_rel * D_i)
  double window_rel = 0.05;
  double small_domain = 10.0;   // strong domain: "small" domain threshold
  double edge_fraction = 0.1;   // strong domain: near-bound band as D_i fraction
};

struct MoveResult {
  Point point;                        // new integral point
  std::vector<std::size_t> touched;   // coordinates that were redrawn or flipped
  bool applicable = true;             // false: the move had no candidates
};

double window_size(double domain, const MoveParams& params);

/// Randomized-rounding kernel: in [0, 1], mode 0.5; tau(0.5) = 0.5 reproduces
/// nearest-integer rounding, the endpoints give floor and ceil.
double tau(double omega);

/// Rounds every active coordinate of the relaxed point to its nearest or
/// second-nearest integer, clamped to the variable's integer box. Inactive
/// coordinates are copied through unchanged.
MoveResult randomized_round(const MipInstance& inst, const Point& relaxed,
                            const std::vector<std::size_t>& active, Rng& rng,
                            const MoveParams& params = {});

/// Flips m of the highest-fractionality binaries, m ~ U(ceil(T/2), floor(3T/2)).
/// Not applicable when no active binary has positive fractionality.
MoveResult weak_perturb_binary(const MipInstance& inst, const SolutionPair& pair,
                               const std::vector<std::size_t>& active, Rng& rng,
                               const MoveParams& params = {});

/// Flips every active binary whose fractionality plus max(0, U(lo, hi)) exceeds 0.5.
MoveResult strong_perturb_binary(const MipInstance& inst, const SolutionPair& pair,
                                 const std::vector<std::size_t>& active, Rng& rng,
                                 const MoveParams& params = {});

/// Weak perturbation ordered by domain-normalized fractionality; selected
/// variables are redrawn inside a window of the relaxed value.
MoveResult weak_perturb_domain(const MipInstance& inst, const SolutionPair& pair,
                               const std::vector<std::size_t>& active, Rng& rng,
                               const MoveParams& params = {});

/// Redraws ceil(|active| / 2) randomly chosen variables; the redraw interval
/// depends on the domain size and how close the integral value sits to a bound.
MoveResult strong_perturb_domain(const MipInstance& inst, const SolutionPair& pair,
                                 const std::vector<std::size_t>& active, Rng& rng,
                                 const MoveParams& params = {});

/// True when the kind may be offered for this active set (binary-only moves
/// require an all-binary active set).
bool move_applicable(MoveKind kind, const MipInstance& inst,
                     const std::vector<std::size_t>& active);

MoveResult apply_move(MoveKind kind, const MipInstance& inst, const SolutionPair& pair,
                      const std::vector<std::size_t>& active, Rng& rng,
                      const MoveParams& params = {});

}  // namespace fpump
