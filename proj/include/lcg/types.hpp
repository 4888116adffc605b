#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcg {

using ActionProfile = std::vector<double>;
using StateVector = std::vector<double>;
using UtilityVector = std::vector<double>;
using Weights = std::vector<double>;

enum class Family { TypeI, TypeII };

// Malformed inputs: specs, profiles, weights, belief slopes, scenario files.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failures of a well-formed solve.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularSystemError : public SolverError {
 public:
  SingularSystemError(const std::string& what, double pivot_magnitude)
      : SolverError(what), pivot(pivot_magnitude) {}
  double pivot;
};

class OutOfBoundsError : public SolverError {
 public:
  OutOfBoundsError(const std::string& what, std::size_t coordinate, double value)
      : SolverError(what), coordinate(coordinate), value(value) {}
  std::size_t coordinate;
  double value;
};

// Parametric description of a linearly coupled game.
//
//   TypeI   u_n = a_n^beta_n * prod_{m != n} (mu_m - tau_m a_m),  mu has N entries
//   TypeII  u_n = a_n^beta_n * (mu - sum_m tau_m a_m),            mu has 1 entry
//
// Values are immutable after construction; every operation on them is a pure
// function, so specs can be shared freely across threads.
struct GameSpec {
  Family family = Family::TypeII;
  std::vector<double> beta;
  std::vector<double> tau;
  std::vector<double> mu;
  std::vector<double> action_lower;
  std::vector<double> action_upper;

  std::size_t n_users() const { return beta.size(); }
  double shared_mu() const { return mu.front(); }  // TypeII only
};

// Checked constructors. Empty bounds select the default box [0, mu_n/tau_n]
// per coordinate (the shared mu for TypeII).
GameSpec make_type1(std::vector<double> beta, std::vector<double> tau,
                    std::vector<double> mu, std::vector<double> lower = {},
                    std::vector<double> upper = {});
GameSpec make_type2(std::vector<double> beta, std::vector<double> tau, double mu,
                    std::vector<double> lower = {}, std::vector<double> upper = {});

// Throws SpecError naming the offending field. Requires positive beta, tau,
// mu, well-ordered finite bounds with lower >= 0, and (TypeII) a box whose
// lower corner leaves the state positive.
void validate_spec(const GameSpec& spec);

// Throws SpecError unless `a` has N entries inside the action box.
void validate_profile(const GameSpec& spec, const ActionProfile& a);

// Throws SpecError unless weights are nonnegative and sum to 1 within 1e-9.
void validate_weights(const GameSpec& spec, const Weights& w);

// Throws SpecError unless `lambda` holds N strictly positive belief slopes.
void validate_slopes(const GameSpec& spec, const std::vector<double>& lambda);

}  // namespace lcg
