#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "lcg/scenario.hpp"

using namespace lcg;
using nlohmann::json;

namespace {

json base_doc() {
  return json{{"family", "type2"},
              {"beta", {1.5, 1.0, 0.5}},
              {"tau", {3.0, 4.0, 5.0}},
              {"mu", 10.0}};
}

}  // namespace

TEST_CASE("a minimal scenario parses with defaults materialized") {
  const Scenario sc = parse_scenario(base_doc(), "test");
  CHECK(sc.spec.family == Family::TypeII);
  CHECK(sc.spec.beta == std::vector<double>{1.5, 1.0, 0.5});
  CHECK(sc.spec.tau == std::vector<double>{3.0, 4.0, 5.0});
  CHECK(sc.spec.shared_mu() == 10.0);
  CHECK(sc.spec.action_lower == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(sc.spec.action_upper[0] == doctest::Approx(10.0 / 3.0));
  CHECK_FALSE(sc.weights.has_value());
  CHECK_FALSE(sc.lambda.has_value());
  CHECK_FALSE(sc.dynamics.has_value());

  // The shared level may equivalently be given as a one-entry array.
  json alt = base_doc();
  alt["mu"] = {10.0};
  CHECK(parse_scenario(alt, "test").spec.shared_mu() == 10.0);
}

TEST_CASE("scenarios round-trip through their JSON echo exactly") {
  json doc = base_doc();
  doc["weights"] = {0.2, 0.3, 0.5};
  doc["lambda"] = {9.0, 12.0, 15.0};
  doc["dynamics"] = {{"rule", "jacobi"},      {"epsilon", 0.25},
                     {"initial", {0.1, 0.2, 0.3}}, {"max_iters", 500},
                     {"tol", 1e-7},           {"divergence_threshold", 1e6},
                     {"clamp", false}};
  const Scenario sc = parse_scenario(doc, "test");
  const Scenario back = parse_scenario(scenario_to_json(sc), "echo");

  CHECK(back.spec.beta == sc.spec.beta);
  CHECK(back.spec.tau == sc.spec.tau);
  CHECK(back.spec.mu == sc.spec.mu);
  CHECK(back.spec.action_lower == sc.spec.action_lower);
  CHECK(back.spec.action_upper == sc.spec.action_upper);
  CHECK(*back.weights == *sc.weights);
  CHECK(*back.lambda == *sc.lambda);
  REQUIRE(back.dynamics.has_value());
  CHECK(back.dynamics->rule == UpdateRule::Jacobi);
  CHECK(back.dynamics->epsilon == 0.25);
  CHECK(back.dynamics->initial == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(back.dynamics->max_iters == 500);
  CHECK(back.dynamics->tol == 1e-7);
  CHECK(back.dynamics->divergence_threshold == 1e6);
  CHECK(back.dynamics->clamp == false);
}

TEST_CASE("product-family scenarios carry per-user levels") {
  json doc{{"family", "type1"},
           {"beta", {1.0, 1.0}},
           {"tau", {1.0, 1.0}},
           {"mu", {1.0, 2.0}}};
  const Scenario sc = parse_scenario(doc, "test");
  CHECK(sc.spec.family == Family::TypeI);
  CHECK(sc.spec.mu == std::vector<double>{1.0, 2.0});

  doc["mu"] = 1.0;  // scalar level is a type2 concept
  CHECK_THROWS_AS(parse_scenario(doc, "test"), SpecError);
}

TEST_CASE("parse errors name the offending field") {
  const auto message_of = [](json doc) {
    try {
      parse_scenario(doc, "test");
    } catch (const SpecError& e) {
      return std::string(e.what());
    }
    return std::string("(no error)");
  };

  json negative_tau = base_doc();
  negative_tau["tau"] = {3.0, -4.0, 5.0};
  CHECK(message_of(negative_tau).find("tau[1]") != std::string::npos);

  json missing_beta = base_doc();
  missing_beta.erase("beta");
  CHECK(message_of(missing_beta).find("beta") != std::string::npos);

  json bad_weights = base_doc();
  bad_weights["weights"] = {0.5, 0.5, 0.5};
  CHECK(message_of(bad_weights).find("weights") != std::string::npos);

  json zero_iters = base_doc();
  zero_iters["dynamics"] = {{"max_iters", 0}};
  CHECK(message_of(zero_iters).find("max_iters") != std::string::npos);

  json mystery = base_doc();
  mystery["gamma"] = 1.0;
  CHECK(message_of(mystery).find("gamma") != std::string::npos);
  CHECK(message_of(mystery).find("unknown") != std::string::npos);

  json nested_mystery = base_doc();
  nested_mystery["dynamics"] = {{"momentum", 0.9}};
  CHECK(message_of(nested_mystery).find("dynamics.momentum") !=
        std::string::npos);

  json bad_family = base_doc();
  bad_family["family"] = "type3";
  CHECK(message_of(bad_family).find("family") != std::string::npos);

  json short_lambda = base_doc();
  short_lambda["lambda"] = {1.0, 2.0};
  CHECK(message_of(short_lambda).find("lambda") != std::string::npos);

  json stringly = base_doc();
  stringly["beta"] = {"1.5", "1.0", "0.5"};
  CHECK(message_of(stringly).find("beta[0]") != std::string::npos);
}

TEST_CASE("scenario files are read strictly") {
  CHECK_THROWS_AS(parse_scenario_file("/no/such/file.json"), SpecError);

  const std::string path = "/tmp/lcg_bad_scenario.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(parse_scenario_file(path), SpecError);
  std::remove(path.c_str());
}

TEST_CASE("command-line overrides replace file values after validation") {
  json doc = base_doc();
  doc["weights"] = {0.2, 0.3, 0.5};
  Scenario sc = parse_scenario(doc, "test");

  ScenarioOverrides ov;
  ov.weights = Weights{0.5, 0.25, 0.25};
  ov.lambda = std::vector<double>{1.0, 2.0, 3.0};
  ov.epsilon = 0.125;
  apply_overrides(sc, ov);
  CHECK(*sc.weights == Weights{0.5, 0.25, 0.25});
  CHECK(*sc.lambda == std::vector<double>{1.0, 2.0, 3.0});
  REQUIRE(sc.dynamics.has_value());  // materialized to carry the step size
  CHECK(sc.dynamics->epsilon == 0.125);
  CHECK(sc.dynamics->initial.size() == 3);

  ScenarioOverrides bad;
  bad.weights = Weights{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(apply_overrides(sc, bad), SpecError);
  bad = {};
  bad.lambda = std::vector<double>{0.0, 1.0, 1.0};
  CHECK_THROWS_AS(apply_overrides(sc, bad), SpecError);
  bad = {};
  bad.epsilon = -0.5;
  CHECK_THROWS_AS(apply_overrides(sc, bad), SpecError);
}
