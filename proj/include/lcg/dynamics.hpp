#pragma once

#include <cstddef>

#include "lcg/model.hpp"
#include "lcg/numerics.hpp"
#include "lcg/types.hpp"

namespace lcg {

enum class UpdateRule { BestResponse, Jacobi };

struct DynamicsConfig {
  UpdateRule rule = UpdateRule::BestResponse;
  double epsilon = 0.5;  // Jacobi step size; ignored by BestResponse
  ActionProfile initial;
  std::size_t max_iters = 100000;
  double tol = 1e-9;  // stop when successive iterates differ less (inf-norm)
  double divergence_threshold = 1e9;
  bool clamp = true;  // project each iterate onto the action box
};

enum class Outcome { Converged, MaxItersReached, Diverged };

struct TrajectoryPoint {
  std::size_t t;
  ActionProfile a;
  StateVector s;
  UtilityVector u;
};

// Every iterate, including the start; consecutive records differ by exactly
// one application of the update map. Out-of-box transients of the unclamped
// map carry NaN utilities for fractional exponents.
struct Trajectory {
  std::vector<TrajectoryPoint> points;
  Outcome outcome = Outcome::MaxItersReached;
  std::size_t iterations = 0;  // t of the last record
};

// Simultaneous best response of every user against the previous profile under
// linear beliefs with slopes `lambda` (TypeII):
//   a_n <- beta_n (mu - sum_{m != n} tau_m a_m + (lambda_n - tau_n) a_n)
//          / (lambda_n (1 + beta_n)).
// The map is affine, so its Jacobian is constant in a.
ActionProfile best_response_map(const GameSpec& spec,
                                const std::vector<double>& lambda,
                                const ActionProfile& a, bool clamp = false);

// Iterates the configured rule: plain best response, or the damped update
// a + epsilon (B(a) - a). Runs until successive iterates are closer than tol,
// an iterate's magnitude passes divergence_threshold (or goes non-finite), or
// max_iters. Deterministic.
Trajectory run_dynamics(const GameSpec& spec, const std::vector<double>& lambda,
                        const DynamicsConfig& cfg);

struct StabilityReport {
  SpectrumResult spectrum;
  double condition_value = 0.0;  // q(-1); best response contracts iff < 1
  bool br_converges = false;
  // Damped updates converge for any 0 < epsilon below this bound,
  // 2 / (1 - min eigenvalue); always positive since eigenvalues stay < 1.
  double jacobi_epsilon_bound = 0.0;
};

StabilityReport stability_analysis(const GameSpec& spec,
                                   const std::vector<double>& lambda);

// Spectrum of the damped update from the best-response spectrum: every
// eigenvalue maps to 1 - epsilon + epsilon * xi.
SpectrumResult jacobi_spectrum_shift(const SpectrumResult& br_spectrum,
                                     double epsilon);

}  // namespace lcg
