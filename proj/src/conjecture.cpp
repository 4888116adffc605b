#include "lcg/conjecture.hpp"

#include <cmath>
#include <sstream>

#include "lcg/model.hpp"

namespace lcg {

namespace {

void require_type2(const GameSpec& spec, const char* op) {
  validate_spec(spec);
  if (spec.family != Family::TypeII) {
    std::ostringstream os;
    os << op << ": requires a TypeII game";
    throw SpecError(os.str());
  }
}

void check_in_box(const GameSpec& spec, const ActionProfile& a,
                  const char* what) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < spec.action_lower[i] || a[i] > spec.action_upper[i]) {
      std::ostringstream os;
      os << what << ": coordinate " << i << " (" << a[i]
         << ") escapes the action bounds";
      throw OutOfBoundsError(os.str(), i, a[i]);
    }
  }
}

}  // namespace

double conjectured_best_action(const GameSpec& spec, std::size_t user,
                               const BeliefConfig& beliefs) {
  validate_spec(spec);
  const std::size_t n = spec.n_users();
  if (user >= n) {
    std::ostringstream os;
    os << "conjectured_best_action: user " << user << " out of range (n=" << n
       << ")";
    throw SpecError(os.str());
  }
  if (beliefs.lambda.size() != n || beliefs.s_ref.size() != n ||
      beliefs.a_ref.size() != n) {
    throw SpecError(
        "conjectured_best_action: belief vectors must have one entry per user");
  }
  validate_slopes(spec, beliefs.lambda);
  const double lam = beliefs.lambda[user];
  const double beta = spec.beta[user];
  return beta * (beliefs.s_ref[user] + lam * beliefs.a_ref[user]) /
         (lam * (1.0 + beta));
}

EquilibriumResult ce_closed_form(const GameSpec& spec,
                                 const std::vector<double>& lambda) {
  require_type2(spec, "ce_closed_form");
  validate_slopes(spec, lambda);
  const std::size_t n = spec.n_users();
  const double mu = spec.shared_mu();
  // Summing (tau/lambda) * beta keeps lambda = tau on the exact same float
  // path as the Nash closed form: each ratio is then exactly 1.0.
  double coupled = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    coupled += (spec.tau[m] / lambda[m]) * spec.beta[m];
  }
  EquilibriumResult result;
  result.kind = EquilibriumKind::Conjectural;
  result.actions.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.actions[i] = spec.beta[i] * mu / (lambda[i] * (1.0 + coupled));
  }
  check_in_box(spec, result.actions, "conjectural equilibrium");
  // Stationarity system: (lambda_n + beta_n tau_n) a_n
  //                      + beta_n sum_{m != n} tau_m a_m = beta_n mu.
  double residual = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double acc = lambda[r] * result.actions[r] - spec.beta[r] * mu;
    for (std::size_t c = 0; c < n; ++c) {
      acc += spec.beta[r] * spec.tau[c] * result.actions[c];
    }
    residual = std::max(residual, std::fabs(acc));
  }
  result.residual = residual;
  if (!(residual <= 1e-8)) {
    std::ostringstream os;
    os << "conjectural equilibrium: stationarity residual " << residual
       << " exceeds 1e-8";
    throw SolverError(os.str());
  }
  result.utilities = evaluate(spec, result.actions).u;
  return result;
}

BeliefConfig beliefs_for_target(const GameSpec& spec,
                                const ActionProfile& target) {
  require_type2(spec, "beliefs_for_target");
  validate_profile(spec, target);
  const std::size_t n = spec.n_users();
  const Evaluation at_target = evaluate(spec, target);
  BeliefConfig beliefs;
  beliefs.lambda.resize(n);
  beliefs.s_ref.resize(n);
  beliefs.a_ref = target;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(target[i] > 0.0)) {
      std::ostringstream os;
      os << "beliefs_for_target: target[" << i << "] must be positive";
      throw SpecError(os.str());
    }
    if (!(at_target.s[i] > 0.0)) {
      std::ostringstream os;
      os << "beliefs_for_target: state at the target is not positive ("
         << at_target.s[i] << ")";
      throw SpecError(os.str());
    }
    beliefs.lambda[i] = spec.beta[i] * at_target.s[i] / target[i];
    beliefs.s_ref[i] = at_target.s[i];
  }
  return beliefs;
}

ConservativenessProfile conservativeness(const GameSpec& spec,
                                         const std::vector<double>& lambda) {
  require_type2(spec, "conservativeness");
  validate_slopes(spec, lambda);
  ConservativenessProfile profile;
  profile.c.resize(spec.n_users());
  for (std::size_t i = 0; i < spec.n_users(); ++i) {
    profile.c[i] = spec.tau[i] / lambda[i];
    profile.total += profile.c[i];
  }
  return profile;
}

double ce_vs_pareto_gap(const GameSpec& spec, const std::vector<double>& lambda,
                        const Weights& w) {
  require_type2(spec, "ce_vs_pareto_gap");
  validate_slopes(spec, lambda);
  validate_weights(spec, w);
  const std::size_t n = spec.n_users();
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] == 0.0) {
      std::ostringstream os;
      os << "ce_vs_pareto_gap: weights[" << i
         << "] is zero; exclude that user from the game first";
      throw SpecError(os.str());
    }
  }
  double wb_sum = 0.0, ratio_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    wb_sum += w[i] * spec.beta[i];
    ratio_sum += (spec.tau[i] / lambda[i]) * spec.beta[i];
  }
  const double d_pb = 1.0 + wb_sum;
  const double d_ce = 1.0 + ratio_sum;
  double gap = std::log(d_pb / d_ce);
  for (std::size_t i = 0; i < n; ++i) {
    gap += w[i] * spec.beta[i] *
           std::log(spec.tau[i] * d_pb / (lambda[i] * w[i] * d_ce));
  }

  const EquilibriumResult ce = ce_closed_form(spec, lambda);
  const EquilibriumResult pb = pareto_type2(spec, w);
  double evaluated = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    evaluated += w[i] * std::log(ce.utilities[i] / pb.utilities[i]);
  }
  if (!(std::fabs(evaluated - gap) <= 1e-9)) {
    std::ostringstream os;
    os << "ce_vs_pareto_gap self-check failed: closed form " << gap
       << " vs evaluated " << evaluated;
    throw SolverError(os.str());
  }
  return gap;
}

}  // namespace lcg
