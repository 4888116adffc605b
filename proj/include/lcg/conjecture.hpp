#pragma once

#include "lcg/equilibria.hpp"
#include "lcg/types.hpp"

namespace lcg {

// Linear belief a user holds about their state: s_n(a_n) believed to be
// s_ref_n - lambda_n (a_n - a_ref_n). Slopes are strictly positive.
struct BeliefConfig {
  std::vector<double> lambda;
  std::vector<double> s_ref;
  std::vector<double> a_ref;
};

// Optimizer of a_n^beta_n times the believed state, unconstrained:
//   a_n = beta_n (s_ref_n + lambda_n a_ref_n) / (lambda_n (1 + beta_n)).
double conjectured_best_action(const GameSpec& spec, std::size_t user,
                               const BeliefConfig& beliefs);

// Conjectural equilibrium of a TypeII game under slopes `lambda`:
//   a_n = beta_n mu / (lambda_n (1 + sum_m tau_m beta_m / lambda_m)).
// lambda = tau reproduces the Nash equilibrium exactly; lambda_n = tau_n/w_n
// reproduces the weighted Pareto point.
EquilibriumResult ce_closed_form(const GameSpec& spec,
                                 const std::vector<double>& lambda);

// Belief configuration whose conjectural equilibrium is exactly `target`
// (every coordinate positive, state positive there):
//   lambda_n = beta_n s(target) / target_n, references pinned at the target.
BeliefConfig beliefs_for_target(const GameSpec& spec,
                                const ActionProfile& target);

// Conservativeness c_n = tau_n / lambda_n: the believed own-impact relative
// to the true one. total == 1 flags a Pareto-optimal belief configuration.
struct ConservativenessProfile {
  std::vector<double> c;
  double total = 0.0;
};

ConservativenessProfile conservativeness(const GameSpec& spec,
                                         const std::vector<double>& lambda);

// Weighted log-utility gap of the conjectural equilibrium against the
// w-weighted Pareto point, closed form cross-checked against evaluation
// (within 1e-9). Nonpositive; zero iff w_n = tau_n / lambda_n for all n.
// Requires strictly positive weights.
double ce_vs_pareto_gap(const GameSpec& spec, const std::vector<double>& lambda,
                        const Weights& w);

}  // namespace lcg
