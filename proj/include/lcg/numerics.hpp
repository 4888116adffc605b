#pragma once

#include <vector>

#include "lcg/types.hpp"

namespace lcg {

struct LinearSystem {
  std::vector<std::vector<double>> matrix;  // square, row major
  std::vector<double> rhs;
};

// Gaussian elimination with partial pivoting, sized for the tiny
// first-order-condition systems this library produces. Throws
// SingularSystemError carrying the pivot magnitude when a pivot vanishes or
// the pivot spread indicates a condition number beyond ~1e12.
std::vector<double> solve_linear(LinearSystem sys);

struct SpectrumResult {
  // All N eigenvalues, ascending, repeated with multiplicity. Always real.
  std::vector<double> eigenvalues;
  double spectral_radius = 0.0;
  // q(-1) = sum_n tau_n beta_n / (lambda_n (1 + 2 beta_n)); the iteration
  // contracts iff this is < 1. For a spectrum produced by
  // jacobi_spectrum_shift the field still refers to the underlying
  // best-response map.
  double q_at_minus_one = 0.0;
};

// Spectrum of the best-response iteration Jacobian of a TypeII game under
// linear beliefs with slopes `lambda`, computed from its structure instead of
// a generic eigensolver:
//
//   * exponents tied within 1e-12 relative form K groups; each group's pole
//     kappa/(1+kappa) is an eigenvalue with multiplicity (group size - 1);
//   * the remaining K eigenvalues are the roots of q(xi) = 1, where q sums
//     tau_n / (lambda_n (1 - xi (1+beta_n)/beta_n)) over users. q increases
//     strictly between consecutive poles, so each of the K bracketing
//     intervals (the leftmost opening at -infinity) holds exactly one root,
//     found by bisection (tolerance 1e-12, at most 200 steps).
//
// Every eigenvalue is < 1; the smallest may be below -1 (divergent map).
SpectrumResult br_jacobian_spectrum(const GameSpec& spec,
                                    const std::vector<double>& lambda);

double inf_norm(const std::vector<double>& v);
double inf_distance(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lcg
