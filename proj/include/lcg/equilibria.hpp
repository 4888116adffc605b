#pragma once

#include <optional>

#include "lcg/numerics.hpp"
#include "lcg/types.hpp"

namespace lcg {

enum class EquilibriumKind { Nash, ParetoPoint, Conjectural };

struct EquilibriumResult {
  EquilibriumKind kind = EquilibriumKind::Nash;
  ActionProfile actions;
  UtilityVector utilities;
  std::optional<Weights> weights_used;
  // Largest violation of the defining first-order system. Closed forms land
  // at rounding level; anything above 1e-8 trips an internal SolverError.
  double residual = 0.0;
};

struct PoAReport {
  double gap = 0.0;          // weighted log-utility gap, Nash vs Pareto; < 0
  double lower_bound = 0.0;  // closed-form bound below the gap
  double upper_bound = 0.0;  // always 0
};

// Unique Nash equilibrium of a TypeII game in closed form:
//   a_n = beta_n mu / (tau_n (1 + sum_m beta_m)).
// Throws OutOfBoundsError if the box cannot contain it.
EquilibriumResult nash_type2(const GameSpec& spec);

// TypeI states ignore the owner's action, so utilities increase in it and the
// equilibrium sits at the upper bound of every coordinate.
EquilibriumResult nash_type1(const GameSpec& spec);

// Pareto-boundary point selected by weighted proportional fairness
// (maximize sum_n w_n log u_n) for a TypeII game, in closed form:
//   a_n = w_n beta_n mu / (tau_n (1 + sum_m w_m beta_m)).
// Zero-weight users sit at zero action and zero utility.
EquilibriumResult pareto_type2(const GameSpec& spec, const Weights& w);

// Same selection for TypeI games via the first-order system of the
// product-form state family; requires strictly positive weights.
EquilibriumResult pareto_type1(const GameSpec& spec, const Weights& w);

// Closed-form anarchy gap between Nash and the weighted Pareto point of a
// TypeII game, cross-checked against direct evaluation of both equilibria
// (routes must agree within 1e-9). Requires strictly positive weights;
// callers must drop zero-weight users first.
PoAReport price_of_anarchy(const GameSpec& spec, const Weights& w);

// First-order-condition systems behind the closed forms, exposed so the
// elimination path can cross-check them.
LinearSystem nash_foc_system(const GameSpec& spec);                    // TypeII
LinearSystem pareto_foc_system(const GameSpec& spec, const Weights& w);  // TypeII

}  // namespace lcg
