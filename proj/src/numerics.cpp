#include "lcg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lcg {

double inf_norm(const std::vector<double>& v) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::fabs(x));
  return worst;
}

double inf_distance(const std::vector<double>& x, const std::vector<double>& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::fabs(x[i] - y[i]));
  }
  return worst;
}

std::vector<double> solve_linear(LinearSystem sys) {
  auto& a = sys.matrix;
  auto& b = sys.rhs;
  const std::size_t n = a.size();
  if (n == 0) throw SpecError("linear system: empty matrix");
  for (const auto& row : a) {
    if (row.size() != n) throw SpecError("linear system: matrix must be square");
  }
  if (b.size() != n) throw SpecError("linear system: rhs length mismatch");

  double max_pivot = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[best][col])) best = r;
    }
    if (best != col) {
      std::swap(a[best], a[col]);
      std::swap(b[best], b[col]);
    }
    const double pivot = a[col][col];
    const double mag = std::fabs(pivot);
    max_pivot = std::max(max_pivot, mag);
    // Pivot spread is a cheap condition estimate; 1e12 is the cutoff past
    // which the residual guarantee would be meaningless.
    if (mag == 0.0 || max_pivot > 1e12 * mag) {
      std::ostringstream os;
      os << "linear system is singular or near-singular (pivot magnitude " << mag
         << ")";
      throw SingularSystemError(os.str(), mag);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / pivot;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

namespace {

struct ExponentGroup {
  double kappa = 0.0;  // representative exponent
  double pole = 0.0;   // kappa / (1 + kappa)
  std::size_t count = 0;
};

// Clusters exponents tied within 1e-12 relative; near-ties would otherwise
// produce ill-conditioned brackets between almost-coincident poles.
std::vector<ExponentGroup> group_exponents(const std::vector<double>& beta) {
  std::vector<double> sorted = beta;
  std::sort(sorted.begin(), sorted.end());
  std::vector<ExponentGroup> groups;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    double sum = sorted[i];
    while (j < sorted.size() &&
           sorted[j] - sorted[j - 1] <= 1e-12 * std::max(sorted[j], sorted[j - 1])) {
      sum += sorted[j];
      ++j;
    }
    ExponentGroup g;
    g.count = j - i;
    g.kappa = sum / static_cast<double>(g.count);
    g.pole = g.kappa / (1.0 + g.kappa);
    groups.push_back(g);
    i = j;
  }
  return groups;
}

}  // namespace

SpectrumResult br_jacobian_spectrum(const GameSpec& spec,
                                    const std::vector<double>& lambda) {
  if (spec.family != Family::TypeII) {
    throw SpecError("spectrum analysis applies to TypeII games only");
  }
  validate_spec(spec);
  validate_slopes(spec, lambda);
  const std::size_t n = spec.n_users();
  const auto groups = group_exponents(spec.beta);

  // Per-user slope coefficient (1 + kappa) / kappa with the exponent
  // canonicalized to its group's representative, so q has exactly one pole
  // per group.
  std::vector<double> coeff(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < groups.size(); ++k) {
      const double gap = std::fabs(spec.beta[i] - groups[k].kappa);
      if (gap < best_gap) {
        best_gap = gap;
        best = k;
      }
    }
    coeff[i] = (1.0 + groups[best].kappa) / groups[best].kappa;
  }

  const auto q = [&](double xi) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += spec.tau[i] / (lambda[i] * (1.0 - coeff[i] * xi));
    }
    return total;
  };
  const auto bisect = [&](double lo, double hi) {
    // q increases from below 1 at lo to above 1 at hi.
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      (q(mid) < 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  SpectrumResult result;
  for (const auto& g : groups) {
    for (std::size_t dup = 1; dup < g.count; ++dup) {
      result.eigenvalues.push_back(g.pole);
    }
  }

  // Walks an endpoint toward `pole` by halving its offset until the
  // predicate holds; a halved offset passes bisection tolerance after ~60
  // steps, so on cap exhaustion the endpoint itself is the root.
  const auto approach = [](double pole, double offset, auto&& done) {
    for (int it = 0; it < 200 && !done(pole - offset); ++it) offset *= 0.5;
    return pole - offset;
  };

  // Leftmost root: the interval opening at -infinity, where q rises from 0
  // toward the first pole. Double outward until q drops below 1.
  {
    const double pole = groups.front().pole;
    double step = std::max(1.0, std::fabs(pole));
    while (q(pole - step) >= 1.0) step *= 2.0;
    const double lo = pole - step;
    const double hi =
        approach(pole, step * 0.25, [&](double x) { return q(x) > 1.0; });
    result.eigenvalues.push_back(hi > lo ? bisect(lo, hi) : hi);
  }

  // One root strictly between each pair of consecutive poles, where q sweeps
  // from -infinity to +infinity.
  for (std::size_t k = 1; k < groups.size(); ++k) {
    const double left = groups[k - 1].pole;
    const double right = groups[k].pole;
    const double width = right - left;
    const double lo =
        approach(left, -0.25 * width, [&](double x) { return q(x) < 1.0; });
    const double hi =
        approach(right, 0.25 * width, [&](double x) { return q(x) > 1.0; });
    result.eigenvalues.push_back(lo < hi ? bisect(lo, hi) : 0.5 * (lo + hi));
  }

  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  result.spectral_radius = 0.0;
  for (double e : result.eigenvalues) {
    result.spectral_radius = std::max(result.spectral_radius, std::fabs(e));
  }
  result.q_at_minus_one = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    result.q_at_minus_one +=
        spec.tau[i] * spec.beta[i] / (lambda[i] * (1.0 + 2.0 * spec.beta[i]));
  }
  return result;
}

}  // namespace lcg
