#include "lcg/equilibria.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "lcg/model.hpp"

namespace lcg {

namespace {

void require_type(const GameSpec& spec, Family family, const char* op) {
  validate_spec(spec);
  if (spec.family != family) {
    std::ostringstream os;
    os << op << ": requires a "
       << (family == Family::TypeII ? "TypeII" : "TypeI") << " game";
    throw SpecError(os.str());
  }
}

void check_in_box(const GameSpec& spec, const ActionProfile& a,
                  const char* what) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < spec.action_lower[i] || a[i] > spec.action_upper[i]) {
      std::ostringstream os;
      os << what << ": coordinate " << i << " (" << a[i]
         << ") escapes the action bounds; widen them or change weights";
      throw OutOfBoundsError(os.str(), i, a[i]);
    }
  }
}

double system_residual(const LinearSystem& sys, const ActionProfile& a) {
  double worst = 0.0;
  for (std::size_t r = 0; r < sys.matrix.size(); ++r) {
    double acc = -sys.rhs[r];
    for (std::size_t c = 0; c < a.size(); ++c) acc += sys.matrix[r][c] * a[c];
    worst = std::max(worst, std::fabs(acc));
  }
  return worst;
}

void check_residual(double residual, const char* what) {
  if (!(residual <= 1e-8)) {
    std::ostringstream os;
    os << what << ": first-order residual " << residual
       << " exceeds 1e-8, closed form and system disagree";
    throw SolverError(os.str());
  }
}

void require_interior_weights(const GameSpec& spec, const Weights& w,
                              const char* op) {
  validate_weights(spec, w);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) {
      std::ostringstream os;
      os << op << ": weights[" << i
         << "] is zero; exclude that user from the game first";
      throw SpecError(os.str());
    }
  }
}

}  // namespace

LinearSystem nash_foc_system(const GameSpec& spec) {
  require_type(spec, Family::TypeII, "nash_foc_system");
  const std::size_t n = spec.n_users();
  LinearSystem sys;
  sys.matrix.assign(n, std::vector<double>(n));
  sys.rhs.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      sys.matrix[r][c] =
          r == c ? (1.0 + spec.beta[r]) * spec.tau[c] : spec.beta[r] * spec.tau[c];
    }
    sys.rhs[r] = spec.beta[r] * spec.shared_mu();
  }
  return sys;
}

LinearSystem pareto_foc_system(const GameSpec& spec, const Weights& w) {
  require_type(spec, Family::TypeII, "pareto_foc_system");
  validate_weights(spec, w);
  const std::size_t n = spec.n_users();
  LinearSystem sys;
  sys.matrix.assign(n, std::vector<double>(n));
  sys.rhs.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double wb = w[r] * spec.beta[r];
    for (std::size_t c = 0; c < n; ++c) {
      sys.matrix[r][c] = r == c ? (1.0 + wb) * spec.tau[c] : wb * spec.tau[c];
    }
    sys.rhs[r] = wb * spec.shared_mu();
  }
  return sys;
}

EquilibriumResult nash_type2(const GameSpec& spec) {
  require_type(spec, Family::TypeII, "nash_type2");
  const std::size_t n = spec.n_users();
  const double mu = spec.shared_mu();
  const double beta_sum =
      std::accumulate(spec.beta.begin(), spec.beta.end(), 0.0);
  EquilibriumResult result;
  result.kind = EquilibriumKind::Nash;
  result.actions.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.actions[i] = spec.beta[i] * mu / (spec.tau[i] * (1.0 + beta_sum));
  }
  check_in_box(spec, result.actions, "nash equilibrium");
  result.residual = system_residual(nash_foc_system(spec), result.actions);
  check_residual(result.residual, "nash equilibrium");
  result.utilities = evaluate(spec, result.actions).u;
  return result;
}

EquilibriumResult nash_type1(const GameSpec& spec) {
  require_type(spec, Family::TypeI, "nash_type1");
  // Own action never enters the own state, so every utility is increasing in
  // it and the equilibrium pins every user to their upper bound.
  EquilibriumResult result;
  result.kind = EquilibriumKind::Nash;
  result.actions = spec.action_upper;
  result.utilities = evaluate(spec, result.actions).u;
  result.residual = 0.0;
  return result;
}

EquilibriumResult pareto_type2(const GameSpec& spec, const Weights& w) {
  require_type(spec, Family::TypeII, "pareto_type2");
  validate_weights(spec, w);
  const std::size_t n = spec.n_users();
  const double mu = spec.shared_mu();
  double wb_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) wb_sum += w[i] * spec.beta[i];
  EquilibriumResult result;
  result.kind = EquilibriumKind::ParetoPoint;
  result.weights_used = w;
  result.actions.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.actions[i] =
        w[i] * spec.beta[i] * mu / (spec.tau[i] * (1.0 + wb_sum));
  }
  check_in_box(spec, result.actions, "pareto point");
  result.residual = system_residual(pareto_foc_system(spec, w), result.actions);
  check_residual(result.residual, "pareto point");
  result.utilities = evaluate(spec, result.actions).u;
  return result;
}

EquilibriumResult pareto_type1(const GameSpec& spec, const Weights& w) {
  require_type(spec, Family::TypeI, "pareto_type1");
  require_interior_weights(spec, w, "pareto_type1");
  const std::size_t n = spec.n_users();
  // Product-form states turn the weighted proportional-fairness conditions
  // into a decoupled linear system:
  //   (w_m beta_m + 1 - w_m) a_m = w_m beta_m mu_m / tau_m.
  LinearSystem sys;
  sys.matrix.assign(n, std::vector<double>(n, 0.0));
  sys.rhs.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    sys.matrix[m][m] = w[m] * spec.beta[m] + 1.0 - w[m];
    sys.rhs[m] = w[m] * spec.beta[m] * spec.mu[m] / spec.tau[m];
  }
  EquilibriumResult result;
  result.kind = EquilibriumKind::ParetoPoint;
  result.weights_used = w;
  result.actions = solve_linear(sys);
  check_in_box(spec, result.actions, "pareto point");
  double residual = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double psi = -(spec.mu[m] - spec.tau[m] * result.actions[m]) / spec.tau[m];
    residual = std::max(residual, std::fabs(spec.beta[m] * w[m] * psi +
                                            (1.0 - w[m]) * result.actions[m]));
  }
  result.residual = residual;
  check_residual(result.residual, "pareto point");
  result.utilities = evaluate(spec, result.actions).u;
  return result;
}

PoAReport price_of_anarchy(const GameSpec& spec, const Weights& w) {
  require_type(spec, Family::TypeII, "price_of_anarchy");
  require_interior_weights(spec, w, "price_of_anarchy");
  const std::size_t n = spec.n_users();
  double b_sum = 0.0, wb_sum = 0.0, w2b_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    b_sum += spec.beta[i];
    wb_sum += w[i] * spec.beta[i];
    w2b_sum += w[i] * w[i] * spec.beta[i];
  }
  PoAReport report;
  report.gap = std::log((1.0 + wb_sum) / (1.0 + b_sum));
  for (std::size_t i = 0; i < n; ++i) {
    report.gap +=
        w[i] * spec.beta[i] * std::log((1.0 + wb_sum) / (w[i] * (1.0 + b_sum)));
  }
  report.lower_bound =
      (1.0 + wb_sum) * std::log((1.0 + wb_sum) * (1.0 + wb_sum) /
                                ((1.0 + w2b_sum) * (1.0 + b_sum)));
  report.upper_bound = 0.0;

  // The closed form must match the gap evaluated from both solutions.
  const EquilibriumResult ne = nash_type2(spec);
  const EquilibriumResult pb = pareto_type2(spec, w);
  double evaluated = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    evaluated += w[i] * std::log(ne.utilities[i] / pb.utilities[i]);
  }
  if (!(std::fabs(evaluated - report.gap) <= 1e-9)) {
    std::ostringstream os;
    os << "anarchy gap self-check failed: closed form " << report.gap
       << " vs evaluated " << evaluated;
    throw SolverError(os.str());
  }
  return report;
}

}  // namespace lcg
