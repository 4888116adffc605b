#include "lcg/types.hpp"

#include <cmath>
#include <sstream>

namespace lcg {

namespace {

std::string at(const char* name, std::size_t i) {
  std::ostringstream os;
  os << name << "[" << i << "]";
  return os.str();
}

void require_positive(const char* name, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
      throw SpecError(at(name, i) + ": must be a positive finite number");
    }
  }
}

std::vector<double> default_upper(const GameSpec& spec) {
  std::vector<double> hi(spec.n_users());
  for (std::size_t n = 0; n < hi.size(); ++n) {
    const double m = spec.family == Family::TypeII ? spec.mu[0] : spec.mu[n];
    hi[n] = m / spec.tau[n];
  }
  return hi;
}

}  // namespace

void validate_spec(const GameSpec& spec) {
  const std::size_t n = spec.beta.size();
  if (n == 0) throw SpecError("beta: must not be empty");
  require_positive("beta", spec.beta);
  if (spec.tau.size() != n) throw SpecError("tau: must have one entry per user");
  require_positive("tau", spec.tau);
  const std::size_t mu_expect = spec.family == Family::TypeII ? 1 : n;
  if (spec.mu.size() != mu_expect) {
    throw SpecError(spec.family == Family::TypeII
                        ? "mu: TypeII takes a single shared value"
                        : "mu: TypeI takes one entry per user");
  }
  require_positive("mu", spec.mu);
  if (spec.action_lower.size() != n || spec.action_upper.size() != n) {
    throw SpecError("action_bounds: must have one [lower, upper] pair per user");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = spec.action_lower[i];
    const double hi = spec.action_upper[i];
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw SpecError(at("action_bounds", i) + ": must be finite");
    }
    if (lo < 0.0) throw SpecError(at("action_bounds", i) + ": lower must be >= 0");
    if (!(lo < hi)) {
      throw SpecError(at("action_bounds", i) + ": lower must be below upper");
    }
  }
  if (spec.family == Family::TypeII) {
    double state_at_floor = spec.mu[0];
    for (std::size_t i = 0; i < n; ++i) {
      state_at_floor -= spec.tau[i] * spec.action_lower[i];
    }
    if (!(state_at_floor > 0.0)) {
      throw SpecError(
          "action_bounds: the state is nonpositive everywhere in the box");
    }
  }
}

GameSpec make_type1(std::vector<double> beta, std::vector<double> tau,
                    std::vector<double> mu, std::vector<double> lower,
                    std::vector<double> upper) {
  GameSpec spec;
  spec.family = Family::TypeI;
  spec.beta = std::move(beta);
  spec.tau = std::move(tau);
  spec.mu = std::move(mu);
  spec.action_lower =
      lower.empty() ? std::vector<double>(spec.beta.size(), 0.0) : std::move(lower);
  if (upper.empty() && spec.tau.size() == spec.beta.size() &&
      spec.mu.size() == spec.beta.size()) {
    spec.action_upper = default_upper(spec);
  } else {
    spec.action_upper = std::move(upper);
  }
  validate_spec(spec);
  return spec;
}

GameSpec make_type2(std::vector<double> beta, std::vector<double> tau, double mu,
                    std::vector<double> lower, std::vector<double> upper) {
  GameSpec spec;
  spec.family = Family::TypeII;
  spec.beta = std::move(beta);
  spec.tau = std::move(tau);
  spec.mu = {mu};
  spec.action_lower =
      lower.empty() ? std::vector<double>(spec.beta.size(), 0.0) : std::move(lower);
  if (upper.empty() && spec.tau.size() == spec.beta.size() && mu > 0.0) {
    spec.action_upper = default_upper(spec);
  } else {
    spec.action_upper = std::move(upper);
  }
  validate_spec(spec);
  return spec;
}

void validate_profile(const GameSpec& spec, const ActionProfile& a) {
  if (a.size() != spec.n_users()) {
    throw SpecError("action profile: expected one action per user");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || a[i] < spec.action_lower[i] ||
        a[i] > spec.action_upper[i]) {
      throw SpecError(at("action profile", i) + ": outside the action bounds");
    }
  }
}

void validate_weights(const GameSpec& spec, const Weights& w) {
  if (w.size() != spec.n_users()) {
    throw SpecError("weights: expected one entry per user");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || w[i] < 0.0) {
      throw SpecError(at("weights", i) + ": must be >= 0");
    }
    total += w[i];
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw SpecError("weights: must sum to 1 (within 1e-9)");
  }
}

void validate_slopes(const GameSpec& spec, const std::vector<double>& lambda) {
  if (lambda.size() != spec.n_users()) {
    throw SpecError("lambda: expected one slope per user");
  }
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!(lambda[i] > 0.0) || !std::isfinite(lambda[i])) {
      throw SpecError(at("lambda", i) + ": must be a positive finite number");
    }
  }
}

}  // namespace lcg
