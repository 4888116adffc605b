#include "lcg/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace lcg {

namespace {

double power(double base, double exponent) {
  if (exponent == 1.0) return base;
  return std::pow(base, exponent);
}

}  // namespace

Evaluation evaluate(const GameSpec& spec, const ActionProfile& a) {
  const std::size_t n = spec.n_users();
  if (a.size() != n) {
    throw SpecError("evaluate: expected one action per user");
  }
  Evaluation ev;
  ev.s.resize(n);
  ev.u.resize(n);
  if (spec.family == Family::TypeII) {
    double state = spec.mu[0];
    for (std::size_t m = 0; m < n; ++m) state -= spec.tau[m] * a[m];
    for (std::size_t m = 0; m < n; ++m) {
      ev.s[m] = state;
      ev.u[m] = power(a[m], spec.beta[m]) * state;
    }
  } else {
    // Each user's state is the product of every other user's factor.
    std::vector<double> factor(n);
    for (std::size_t m = 0; m < n; ++m) {
      factor[m] = spec.mu[m] - spec.tau[m] * a[m];
    }
    for (std::size_t m = 0; m < n; ++m) {
      double prod = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != m) prod *= factor[j];
      }
      ev.s[m] = prod;
      ev.u[m] = power(a[m], spec.beta[m]) * prod;
    }
  }
  return ev;
}

double weighted_log_objective(const Weights& w, const UtilityVector& u) {
  double total = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) {
    if (w[n] == 0.0) continue;
    if (!(u[n] > 0.0)) return -std::numeric_limits<double>::infinity();
    total += w[n] * std::log(u[n]);
  }
  return total;
}

namespace {

constexpr double kStep = 1e-6;  // central-difference step for derivatives

struct Probe {
  const StateFunction& state;
  std::vector<double> scratch;

  double operator()(std::size_t user, const std::vector<double>& a) {
    return state(user, std::span<const double>(a));
  }
  double shifted(std::size_t user, std::vector<double> a, std::size_t j,
                 double dj, std::size_t k = SIZE_MAX, double dk = 0.0) {
    a[j] += dj;
    if (k != SIZE_MAX) a[k] += dk;
    return state(user, std::span<const double>(a));
  }
};

void worse(AssumptionCheck& check, double violation) {
  check.worst_residual = std::max(check.worst_residual, violation);
}

}  // namespace

ValidationReport validate_state_function(const StateFunction& state,
                                         std::size_t n_users,
                                         const std::vector<double>& lower,
                                         const std::vector<double>& upper,
                                         int samples, std::uint64_t seed,
                                         const DomainPredicate& domain) {
  if (n_users == 0 || lower.size() != n_users || upper.size() != n_users) {
    throw SpecError("validate: bounds must cover every user");
  }
  if (samples <= 0) throw SpecError("validate: samples must be >= 1");
  std::vector<double> width(n_users);
  for (std::size_t j = 0; j < n_users; ++j) {
    width[j] = upper[j] - lower[j];
    if (!(width[j] > 40.0 * kStep)) {
      throw SpecError("validate: action bounds too narrow to sample interior points");
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Probe probe{state, {}};

  ValidationReport report;
  report.samples_used = samples;
  report.a1.pass = report.a2.pass = report.a3.pass = report.a4.pass = true;

  // Diagonal-branch evidence accumulated over every sample.
  bool zero_branch_ok = true;
  bool equal_branch_ok = true;
  bool saw_domain_point = false;

  for (int it = 0; it < samples; ++it) {
    // Keep the macro affineness stencil (5% of the box) inside the box.
    std::vector<double> a(n_users), macro(n_users);
    for (std::size_t j = 0; j < n_users; ++j) {
      macro[j] = 0.05 * width[j];
      const double lo = lower[j] + macro[j] + 2.0 * kStep;
      const double hi = upper[j] - macro[j] - 2.0 * kStep;
      a[j] = lo + unit(rng) * (hi - lo);
    }
    std::vector<double> s0(n_users);
    for (std::size_t n = 0; n < n_users; ++n) s0[n] = probe(n, a);

    // A1: nonnegative states wherever the structural factors are positive.
    // That region can be a thin corner of the box, so a draw that misses it
    // is contracted toward the lower corner until the predicate admits it;
    // the bundled domains are downward-closed, so this always lands.
    std::vector<double> a1_point = a;
    bool a1_in_domain = !domain || domain(std::span<const double>(a1_point));
    for (int halving = 0; !a1_in_domain && halving < 60; ++halving) {
      for (std::size_t j = 0; j < n_users; ++j) {
        a1_point[j] = lower[j] + 0.5 * (a1_point[j] - lower[j]);
      }
      a1_in_domain = domain(std::span<const double>(a1_point));
    }
    if (a1_in_domain) {
      saw_domain_point = true;
      for (std::size_t n = 0; n < n_users; ++n) {
        const double sn = probe(n, a1_point);
        if (sn < 0.0) {
          report.a1.pass = false;
          worse(report.a1, -sn);
        }
      }
    }

    // First and second central differences of every state along every axis.
    std::vector<std::vector<double>> d1(n_users, std::vector<double>(n_users));
    for (std::size_t n = 0; n < n_users; ++n) {
      const double scale = std::max(1.0, std::fabs(s0[n]));
      for (std::size_t m = 0; m < n_users; ++m) {
        const double up = probe.shifted(n, a, m, kStep);
        const double dn = probe.shifted(n, a, m, -kStep);
        d1[n][m] = (up - dn) / (2.0 * kStep);
        const double second = up - 2.0 * s0[n] + dn;
        // A2: strict decrease in rivals' actions, linearity along each axis.
        if (m != n && !(d1[n][m] < 0.0)) {
          report.a2.pass = false;
          worse(report.a2, d1[n][m]);
        }
        if (m == n && d1[n][m] > 1e-8 * scale) {
          report.a2.pass = false;
          worse(report.a2, d1[n][m]);
        }
        if (std::fabs(second) > 1e-13 * scale) {
          report.a2.pass = false;
          worse(report.a2, std::fabs(second) / scale);
        }
      }
    }

    // A3: s_n / s'_nm affine in the full action vector. Probed at macro
    // scale; pure second differences plus the mixed ones, since axis checks
    // alone cannot see cross curvature.
    for (std::size_t n = 0; n < n_users; ++n) {
      for (std::size_t m = 0; m < n_users; ++m) {
        if (m == n) continue;
        auto ratio = [&](std::vector<double> base) {
          const double up = probe.shifted(n, base, m, kStep);
          const double dn = probe.shifted(n, base, m, -kStep);
          const double slope = (up - dn) / (2.0 * kStep);
          return probe(n, base) / slope;
        };
        const double g0 = ratio(a);
        if (!std::isfinite(g0)) {
          report.a3.pass = false;
          continue;
        }
        const double gscale = std::max(1.0, std::fabs(g0));
        for (std::size_t j = 0; j < n_users; ++j) {
          std::vector<double> hi = a, lo = a;
          hi[j] += macro[j];
          lo[j] -= macro[j];
          const double second = ratio(hi) - 2.0 * g0 + ratio(lo);
          if (!(std::fabs(second) <= 1e-5 * gscale)) {
            report.a3.pass = false;
            worse(report.a3, std::fabs(second) / gscale);
          }
          for (std::size_t k = j + 1; k < n_users; ++k) {
            std::vector<double> pp = a, pm = a, mp = a, mm = a;
            pp[j] += macro[j]; pp[k] += macro[k];
            pm[j] += macro[j]; pm[k] -= macro[k];
            mp[j] -= macro[j]; mp[k] += macro[k];
            mm[j] -= macro[j]; mm[k] -= macro[k];
            const double mixed = ratio(pp) - ratio(pm) - ratio(mp) + ratio(mm);
            if (!(std::fabs(mixed) <= 1e-5 * gscale)) {
              report.a3.pass = false;
              worse(report.a3, std::fabs(mixed) / gscale);
            }
          }
        }
      }
    }

    // A4: the relative impact s'_nm / s_n agrees across every affected user;
    // the diagonal either vanishes or matches that shared ratio.
    for (std::size_t m = 0; m < n_users; ++m) {
      double ref = 0.0;
      double ref_mag = 0.0;
      bool have_ref = false;
      for (std::size_t n = 0; n < n_users; ++n) {
        if (n == m || s0[n] == 0.0) continue;
        const double r = d1[n][m] / s0[n];
        if (!have_ref) {
          ref = r;
          ref_mag = std::fabs(r);
          have_ref = true;
          continue;
        }
        const double dev = std::fabs(r - ref) / std::max(1e-300, ref_mag);
        if (dev > 1e-7) {
          report.a4.pass = false;
          worse(report.a4, dev);
        }
      }
      if (!have_ref || s0[m] == 0.0) continue;
      const double diag = d1[m][m] / s0[m];
      if (std::fabs(diag) > 1e-7 * std::max(1.0, ref_mag)) zero_branch_ok = false;
      if (std::fabs(diag - ref) > 1e-7 * std::max(1.0, ref_mag)) {
        equal_branch_ok = false;
      }
    }
  }

  if (!saw_domain_point) {
    report.a1.pass = false;
    report.a1.worst_residual = std::numeric_limits<double>::infinity();
  }
  if (n_users == 1) {
    // Single user: no cross impacts exist, both branches hold vacuously.
    report.a4_branch = CouplingBranch::ZeroDiagonal;
  } else if (zero_branch_ok) {
    report.a4_branch = CouplingBranch::ZeroDiagonal;
  } else if (equal_branch_ok) {
    report.a4_branch = CouplingBranch::EqualRatio;
  } else {
    report.a4_branch = CouplingBranch::Neither;
    report.a4.pass = false;
  }
  return report;
}

ValidationReport validate_assumptions(const GameSpec& spec, int samples,
                                      std::uint64_t seed) {
  validate_spec(spec);
  StateFunction state = [&spec](std::size_t user, std::span<const double> a) {
    ActionProfile profile(a.begin(), a.end());
    return evaluate(spec, profile).s[user];
  };
  DomainPredicate domain;
  if (spec.family == Family::TypeII) {
    domain = [&spec](std::span<const double> a) {
      double state_value = spec.mu[0];
      for (std::size_t m = 0; m < a.size(); ++m) {
        state_value -= spec.tau[m] * a[m];
      }
      return state_value > 0.0;
    };
  } else {
    domain = [&spec](std::span<const double> a) {
      for (std::size_t m = 0; m < a.size(); ++m) {
        if (!(spec.mu[m] - spec.tau[m] * a[m] > 0.0)) return false;
      }
      return true;
    };
  }
  return validate_state_function(state, spec.n_users(), spec.action_lower,
                                 spec.action_upper, samples, seed, domain);
}

}  // namespace lcg
