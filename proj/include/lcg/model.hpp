#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "lcg/types.hpp"

namespace lcg {

struct Evaluation {
  StateVector s;
  UtilityVector u;
};

// States and utilities at a joint action. Dimensions are checked; staying
// inside the action box is the caller's job. The dynamics simulator
// deliberately evaluates transient out-of-box iterates, where a negative base
// under a fractional exponent yields NaN utility. Negative states are
// reported as-is.
Evaluation evaluate(const GameSpec& spec, const ActionProfile& a);

// sum_n w_n * log(u_n) with the 0 * log(0) = 0 convention; -infinity when a
// positively weighted utility is not positive.
double weighted_log_objective(const Weights& w, const UtilityVector& u);

struct AssumptionCheck {
  bool pass = false;
  double worst_residual = 0.0;
};

// How a user's own action enters their state: not at all (product-form
// states) or with the same relative slope rivals see (shared affine states).
enum class CouplingBranch { ZeroDiagonal, EqualRatio, Neither };

struct ValidationReport {
  AssumptionCheck a1;  // state nonnegativity where every factor is positive
  AssumptionCheck a2;  // states strictly decrease and are linear in rivals' actions
  AssumptionCheck a3;  // state / cross-slope ratio is affine
  AssumptionCheck a4;  // relative cross-impact identical across affected users
  CouplingBranch a4_branch = CouplingBranch::Neither;
  int samples_used = 0;

  bool all_pass() const { return a1.pass && a2.pass && a3.pass && a4.pass; }
};

// State evaluator for one user at a joint action; the hook for validating
// user-extended families that are not representable as a GameSpec.
using StateFunction =
    std::function<double(std::size_t user, std::span<const double> a)>;

// Optional domain filter for the nonnegativity check (A1 only applies where
// all structural factors are positive; for TypeII that region excludes the
// congested corner of the box).
using DomainPredicate = std::function<bool(std::span<const double> a)>;

// Finite-difference audit of the coupling assumptions at `samples` interior
// points drawn uniformly (mt19937_64 with `seed`). First and second
// derivatives use central differences with step h = 1e-6; affineness is
// probed additionally with a macro step of 5% of the box width, since
// curvature of order one is invisible to raw differences at h = 1e-6.
ValidationReport validate_assumptions(const GameSpec& spec, int samples,
                                      std::uint64_t seed);

ValidationReport validate_state_function(const StateFunction& state,
                                         std::size_t n_users,
                                         const std::vector<double>& lower,
                                         const std::vector<double>& upper,
                                         int samples, std::uint64_t seed,
                                         const DomainPredicate& domain = {});

}  // namespace lcg
