#include "lcg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

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

ActionProfile clamp_to_box(const GameSpec& spec, ActionProfile a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = std::clamp(a[i], spec.action_lower[i], spec.action_upper[i]);
  }
  return a;
}

}  // namespace

ActionProfile best_response_map(const GameSpec& spec,
                                const std::vector<double>& lambda,
                                const ActionProfile& a, bool clamp) {
  require_type2(spec, "best_response_map");
  validate_slopes(spec, lambda);
  const std::size_t n = spec.n_users();
  if (a.size() != n) {
    throw SpecError("best_response_map: profile size mismatch");
  }
  const double mu = spec.shared_mu();
  double load = 0.0;
  for (std::size_t m = 0; m < n; ++m) load += spec.tau[m] * a[m];
  ActionProfile next(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double others = load - spec.tau[i] * a[i];
    next[i] = spec.beta[i] * (mu - others + (lambda[i] - spec.tau[i]) * a[i]) /
              (lambda[i] * (1.0 + spec.beta[i]));
  }
  return clamp ? clamp_to_box(spec, next) : next;
}

Trajectory run_dynamics(const GameSpec& spec, const std::vector<double>& lambda,
                        const DynamicsConfig& cfg) {
  require_type2(spec, "run_dynamics");
  validate_slopes(spec, lambda);
  const std::size_t n = spec.n_users();
  if (cfg.initial.size() != n) {
    throw SpecError("run_dynamics: initial profile size mismatch");
  }
  if (cfg.rule == UpdateRule::Jacobi &&
      !(cfg.epsilon > 0.0 && std::isfinite(cfg.epsilon))) {
    throw SpecError("run_dynamics: epsilon must be positive and finite");
  }
  if (!(cfg.tol > 0.0) || !(cfg.divergence_threshold > 0.0)) {
    throw SpecError(
        "run_dynamics: tol and divergence_threshold must be positive");
  }

  Trajectory traj;
  const auto record = [&](std::size_t t, const ActionProfile& a) {
    Evaluation eval = evaluate(spec, a);
    traj.points.push_back({t, a, std::move(eval.s), std::move(eval.u)});
  };

  ActionProfile current =
      cfg.clamp ? clamp_to_box(spec, cfg.initial) : cfg.initial;
  record(0, current);

  for (std::size_t t = 1; t <= cfg.max_iters; ++t) {
    ActionProfile next = best_response_map(spec, lambda, current, false);
    if (cfg.rule == UpdateRule::Jacobi) {
      for (std::size_t i = 0; i < n; ++i) {
        next[i] = current[i] + cfg.epsilon * (next[i] - current[i]);
      }
    }
    if (cfg.clamp) next = clamp_to_box(spec, next);

    record(t, next);
    traj.iterations = t;

    bool blown_up = false;
    for (double v : next) {
      if (!std::isfinite(v) || std::fabs(v) > cfg.divergence_threshold) {
        blown_up = true;
        break;
      }
    }
    if (blown_up) {
      traj.outcome = Outcome::Diverged;
      return traj;
    }
    if (inf_distance(next, current) < cfg.tol) {
      traj.outcome = Outcome::Converged;
      return traj;
    }
    current = std::move(next);
  }
  traj.outcome = Outcome::MaxItersReached;
  return traj;
}

StabilityReport stability_analysis(const GameSpec& spec,
                                   const std::vector<double>& lambda) {
  require_type2(spec, "stability_analysis");
  validate_slopes(spec, lambda);
  StabilityReport report;
  report.spectrum = br_jacobian_spectrum(spec, lambda);
  report.condition_value = report.spectrum.q_at_minus_one;
  report.br_converges = report.condition_value < 1.0;
  const double min_eig = report.spectrum.eigenvalues.front();
  report.jacobi_epsilon_bound = 2.0 / (1.0 - min_eig);
  return report;
}

SpectrumResult jacobi_spectrum_shift(const SpectrumResult& br_spectrum,
                                     double epsilon) {
  if (!(epsilon > 0.0 && std::isfinite(epsilon))) {
    throw SpecError("jacobi_spectrum_shift: epsilon must be positive");
  }
  SpectrumResult shifted;
  shifted.eigenvalues.reserve(br_spectrum.eigenvalues.size());
  for (double xi : br_spectrum.eigenvalues) {
    shifted.eigenvalues.push_back(1.0 - epsilon + epsilon * xi);
  }
  std::sort(shifted.eigenvalues.begin(), shifted.eigenvalues.end());
  shifted.spectral_radius = 0.0;
  for (double xi : shifted.eigenvalues) {
    shifted.spectral_radius = std::max(shifted.spectral_radius, std::fabs(xi));
  }
  // The underlying best-response condition value is unchanged by damping.
  shifted.q_at_minus_one = br_spectrum.q_at_minus_one;
  return shifted;
}

}  // namespace lcg
