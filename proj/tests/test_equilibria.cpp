#include <doctest.h>

#include <cmath>
#include <random>

#include "lcg/equilibria.hpp"
#include "lcg/model.hpp"
#include "support/oracles.hpp"

using namespace lcg;

namespace {

GameSpec flow3() { return make_type2({1.5, 1.0, 0.5}, {3.0, 4.0, 5.0}, 10.0); }

const Weights kEvenThirds = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

}  // namespace

TEST_CASE("three-user shared-state equilibrium and fair point") {
  const GameSpec spec = flow3();

  const EquilibriumResult ne = nash_type2(spec);
  CHECK(ne.actions[0] == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(ne.actions[1] == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(ne.actions[2] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(ne.utilities[0] == doctest::Approx(3.4939).epsilon(5e-4));
  CHECK(ne.utilities[1] == doctest::Approx(1.5625).epsilon(5e-4));
  CHECK(ne.utilities[2] == doctest::Approx(1.25).epsilon(5e-4));
  CHECK(ne.residual <= 1e-12);

  const EquilibriumResult pb = pareto_type2(spec, kEvenThirds);
  CHECK(pb.actions[0] == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(pb.actions[1] == doctest::Approx(5.0 / 12.0).epsilon(1e-12));
  CHECK(pb.actions[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(pb.utilities[0] == doctest::Approx(3.8036).epsilon(5e-4));
  CHECK(pb.utilities[1] == doctest::Approx(2.0833).epsilon(5e-4));
  CHECK(pb.utilities[2] == doctest::Approx(2.0412).epsilon(5e-4));

  // The fair point halves total load and doubles the leftover state.
  const Evaluation at_ne = evaluate(spec, ne.actions);
  const Evaluation at_pb = evaluate(spec, pb.actions);
  CHECK(at_ne.s[0] == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(at_pb.s[0] == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("single-user games collapse to the scalar optimum") {
  const GameSpec spec = make_type2({2.0}, {4.0}, 12.0);
  // a = beta mu / (tau (1 + beta)) = 2*12 / (4*3) = 2.
  CHECK(nash_type2(spec).actions[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(pareto_type2(spec, {1.0}).actions[0] ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("anarchy gap of the reference game is pinned") {
  const PoAReport report = price_of_anarchy(flow3(), kEvenThirds);
  CHECK(report.gap == doctest::Approx(std::log(0.75)).epsilon(1e-12));
  CHECK(report.gap == doctest::Approx(-0.2876820724517809).epsilon(1e-12));
  CHECK(report.lower_bound ==
        doctest::Approx(-0.5753641449035621).epsilon(1e-12));
  CHECK(report.upper_bound == 0.0);
  CHECK(report.lower_bound <= report.gap);
  CHECK(report.gap < report.upper_bound);
}

TEST_CASE("anarchy gap needs every user weighted") {
  CHECK_THROWS_AS(price_of_anarchy(flow3(), {0.5, 0.5, 0.0}), SpecError);
  CHECK_THROWS_AS(pareto_type1(make_type1({1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}),
                               {1.0, 0.0}),
                  SpecError);
}

TEST_CASE("a zero-weight user is parked at zero in the shared-state family") {
  const EquilibriumResult pb = pareto_type2(flow3(), {0.6, 0.4, 0.0});
  CHECK(pb.actions[2] == 0.0);
  CHECK(pb.utilities[2] == 0.0);
  CHECK(pb.actions[0] > 0.0);
}

TEST_CASE("boxes that exclude the solution are reported, not clipped") {
  const GameSpec tight = make_type2({1.5, 1.0, 0.5}, {3.0, 4.0, 5.0}, 10.0,
                                    {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
  CHECK_THROWS_AS(nash_type2(tight), OutOfBoundsError);
  try {
    nash_type2(tight);
  } catch (const OutOfBoundsError& e) {
    CHECK(e.coordinate == 0);
    CHECK(e.value == doctest::Approx(1.25));
  }
}

TEST_CASE("product-family equilibrium saturates the action box") {
  const GameSpec spec =
      make_type1({2.0, 1.0}, {1.0, 2.0}, {4.0, 6.0}, {0.0, 0.0}, {3.0, 2.5});
  const EquilibriumResult ne = nash_type1(spec);
  CHECK(ne.actions[0] == 3.0);
  CHECK(ne.actions[1] == 2.5);
  CHECK(ne.residual == 0.0);
}

TEST_CASE("product-family fair points follow the decoupled closed form") {
  // Unit-rate random access: the fair persistence probabilities are exactly
  // the weights.
  const GameSpec ra =
      make_type1({1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0});
  const Weights w = {0.5, 0.3, 0.2};
  const EquilibriumResult fair = pareto_type1(ra, w);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(fair.actions[i] == doctest::Approx(w[i]).epsilon(1e-12));
  }

  // Mixed exponents, hand-solved: (w b + 1 - w) a = w b mu / tau.
  const GameSpec mixed = make_type1({2.0, 1.0}, {1.0, 1.0}, {1.0, 1.0});
  const EquilibriumResult point = pareto_type1(mixed, {0.5, 0.5});
  CHECK(point.actions[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(point.actions[1] == doctest::Approx(0.5).epsilon(1e-12));

  // No grid profile beats it on the weighted log objective.
  const double at_point =
      weighted_log_objective({0.5, 0.5}, point.utilities);
  CHECK(oracle::grid_best_objective(mixed, {0.5, 0.5}, 60) <=
        at_point + 1e-9);
}

TEST_CASE("no unilateral deviation improves on the equilibrium") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const oracle::RandomGame game = oracle::random_type2(rng);
    const EquilibriumResult ne = nash_type2(game.spec);
    const Evaluation at_ne = evaluate(game.spec, ne.actions);
    for (int probe = 0; probe < 40; ++probe) {
      std::uniform_int_distribution<std::size_t> pick_user(
          0, game.spec.n_users() - 1);
      const std::size_t n = pick_user(rng);
      ActionProfile dev = ne.actions;
      std::uniform_real_distribution<double> pick_action(
          game.spec.action_lower[n], game.spec.action_upper[n]);
      dev[n] = pick_action(rng);
      CHECK(evaluate(game.spec, dev).u[n] <= at_ne.u[n] + 1e-9);
    }
  }
}

TEST_CASE("closed forms agree with the assembled stationarity systems") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const oracle::RandomGame game = oracle::random_type2(rng);
    const Weights w =
        oracle::random_interior_weights(rng, game.spec.n_users());

    const ActionProfile ne_direct = solve_linear(nash_foc_system(game.spec));
    const EquilibriumResult ne = nash_type2(game.spec);
    const ActionProfile pb_direct =
        solve_linear(pareto_foc_system(game.spec, w));
    const EquilibriumResult pb = pareto_type2(game.spec, w);
    for (std::size_t i = 0; i < game.spec.n_users(); ++i) {
      CHECK(ne.actions[i] ==
            doctest::Approx(ne_direct[i]).epsilon(1e-10));
      CHECK(pb.actions[i] ==
            doctest::Approx(pb_direct[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("random games keep the anarchy gap inside its bounds") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const oracle::RandomGame game = oracle::random_type2(rng);
    const Weights w =
        oracle::random_interior_weights(rng, game.spec.n_users());
    const PoAReport report = price_of_anarchy(game.spec, w);
    CHECK(report.gap <= report.upper_bound + 1e-12);
    CHECK(report.gap >= report.lower_bound - 1e-12);
  }
}
