#include "lcg/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace lcg {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& detail) {
  throw SpecError(path + ": " + detail);
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      fail(path.empty() ? item.key() : path + "." + item.key(),
           "unknown key");
    }
  }
}

const json& require_key(const json& obj, const std::string& path,
                        const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

bool get_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

std::vector<double> get_number_array(const json& v, const std::string& path,
                                     std::size_t expected) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::ostringstream at;
    at << path << "[" << i << "]";
    out.push_back(get_number(v[i], at.str()));
  }
  if (expected != 0 && out.size() != expected) {
    std::ostringstream os;
    os << "expected " << expected << " entries, got " << out.size();
    fail(path, os.str());
  }
  return out;
}

DynamicsConfig parse_dynamics(const json& v, const GameSpec& spec) {
  if (!v.is_object()) fail("dynamics", "expected an object");
  reject_unknown_keys(v, "dynamics",
                      {"rule", "epsilon", "initial", "max_iters", "tol",
                       "divergence_threshold", "clamp"});
  DynamicsConfig cfg;
  if (auto it = v.find("rule"); it != v.end()) {
    if (!it->is_string()) fail("dynamics.rule", "expected a string");
    const std::string rule = it->get<std::string>();
    if (rule == "best_response") {
      cfg.rule = UpdateRule::BestResponse;
    } else if (rule == "jacobi") {
      cfg.rule = UpdateRule::Jacobi;
    } else {
      fail("dynamics.rule", "expected \"best_response\" or \"jacobi\"");
    }
  }
  if (auto it = v.find("epsilon"); it != v.end()) {
    cfg.epsilon = get_number(*it, "dynamics.epsilon");
    if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon)) {
      fail("dynamics.epsilon", "must be positive and finite");
    }
  }
  if (auto it = v.find("max_iters"); it != v.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 1) {
      fail("dynamics.max_iters", "must be an integer of at least 1");
    }
    cfg.max_iters = it->get<std::size_t>();
  }
  if (auto it = v.find("tol"); it != v.end()) {
    cfg.tol = get_number(*it, "dynamics.tol");
    if (!(cfg.tol > 0.0)) fail("dynamics.tol", "must be positive");
  }
  if (auto it = v.find("divergence_threshold"); it != v.end()) {
    cfg.divergence_threshold = get_number(*it, "dynamics.divergence_threshold");
    if (!(cfg.divergence_threshold > 0.0)) {
      fail("dynamics.divergence_threshold", "must be positive");
    }
  }
  if (auto it = v.find("clamp"); it != v.end()) {
    cfg.clamp = get_bool(*it, "dynamics.clamp");
  }
  if (auto it = v.find("initial"); it != v.end()) {
    cfg.initial = get_number_array(*it, "dynamics.initial", spec.n_users());
    for (std::size_t i = 0; i < cfg.initial.size(); ++i) {
      if (!std::isfinite(cfg.initial[i])) {
        std::ostringstream at;
        at << "dynamics.initial[" << i << "]";
        fail(at.str(), "must be finite");
      }
    }
  } else {
    cfg.initial.resize(spec.n_users());
    for (std::size_t i = 0; i < cfg.initial.size(); ++i) {
      cfg.initial[i] = 0.5 * (spec.action_lower[i] + spec.action_upper[i]);
    }
  }
  return cfg;
}

json dynamics_to_json(const DynamicsConfig& cfg) {
  json out;
  out["rule"] =
      cfg.rule == UpdateRule::BestResponse ? "best_response" : "jacobi";
  out["epsilon"] = cfg.epsilon;
  out["initial"] = cfg.initial;
  out["max_iters"] = cfg.max_iters;
  out["tol"] = cfg.tol;
  out["divergence_threshold"] = cfg.divergence_threshold;
  out["clamp"] = cfg.clamp;
  return out;
}

}  // namespace

Scenario parse_scenario(const json& doc, const std::string& source) {
  if (!doc.is_object()) {
    throw SpecError(source + ": scenario must be a JSON object");
  }
  reject_unknown_keys(doc, "",
                      {"family", "beta", "tau", "mu", "action_bounds",
                       "weights", "lambda", "dynamics"});

  const json& fam = require_key(doc, "", "family");
  if (!fam.is_string()) fail("family", "expected a string");
  const std::string family = fam.get<std::string>();
  if (family != "type1" && family != "type2") {
    fail("family", "expected \"type1\" or \"type2\"");
  }

  std::vector<double> beta =
      get_number_array(require_key(doc, "", "beta"), "beta", 0);
  if (beta.empty()) fail("beta", "must not be empty");
  const std::size_t n = beta.size();
  std::vector<double> tau =
      get_number_array(require_key(doc, "", "tau"), "tau", n);

  std::vector<double> lower, upper;
  if (auto it = doc.find("action_bounds"); it != doc.end()) {
    if (!it->is_object()) fail("action_bounds", "expected an object");
    reject_unknown_keys(*it, "action_bounds", {"lower", "upper"});
    lower = get_number_array(require_key(*it, "action_bounds", "lower"),
                             "action_bounds.lower", n);
    upper = get_number_array(require_key(*it, "action_bounds", "upper"),
                             "action_bounds.upper", n);
  }

  Scenario sc;
  const json& mu = require_key(doc, "", "mu");
  if (family == "type2") {
    double mu_value;
    if (mu.is_number()) {
      mu_value = mu.get<double>();
    } else if (mu.is_array() && mu.size() == 1) {
      mu_value = get_number(mu[0], "mu[0]");
    } else {
      fail("mu", "expected a number (shared across users) for type2");
    }
    sc.spec = make_type2(std::move(beta), std::move(tau), mu_value,
                         std::move(lower), std::move(upper));
  } else {
    sc.spec = make_type1(std::move(beta), std::move(tau),
                         get_number_array(mu, "mu", n), std::move(lower),
                         std::move(upper));
  }

  if (auto it = doc.find("weights"); it != doc.end()) {
    sc.weights = get_number_array(*it, "weights", n);
    validate_weights(sc.spec, *sc.weights);
  }
  if (auto it = doc.find("lambda"); it != doc.end()) {
    sc.lambda = get_number_array(*it, "lambda", n);
    validate_slopes(sc.spec, *sc.lambda);
  }
  if (auto it = doc.find("dynamics"); it != doc.end()) {
    sc.dynamics = parse_dynamics(*it, sc.spec);
  }
  return sc;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SpecError("cannot read scenario file '" + path + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(path + ": invalid JSON: " + e.what());
  }
  return parse_scenario(doc, path);
}

json scenario_to_json(const Scenario& sc) {
  json out;
  out["family"] = sc.spec.family == Family::TypeI ? "type1" : "type2";
  out["beta"] = sc.spec.beta;
  out["tau"] = sc.spec.tau;
  if (sc.spec.family == Family::TypeII) {
    out["mu"] = sc.spec.shared_mu();
  } else {
    out["mu"] = sc.spec.mu;
  }
  out["action_bounds"] = {{"lower", sc.spec.action_lower},
                          {"upper", sc.spec.action_upper}};
  if (sc.weights) out["weights"] = *sc.weights;
  if (sc.lambda) out["lambda"] = *sc.lambda;
  if (sc.dynamics) out["dynamics"] = dynamics_to_json(*sc.dynamics);
  return out;
}

void apply_overrides(Scenario& sc, const ScenarioOverrides& ov) {
  if (ov.weights) {
    validate_weights(sc.spec, *ov.weights);
    sc.weights = ov.weights;
  }
  if (ov.lambda) {
    validate_slopes(sc.spec, *ov.lambda);
    sc.lambda = ov.lambda;
  }
  if (ov.epsilon) {
    if (!(*ov.epsilon > 0.0) || !std::isfinite(*ov.epsilon)) {
      throw SpecError("epsilon: must be positive and finite");
    }
    if (!sc.dynamics) {
      DynamicsConfig cfg;
      cfg.initial.resize(sc.spec.n_users());
      for (std::size_t i = 0; i < cfg.initial.size(); ++i) {
        cfg.initial[i] =
            0.5 * (sc.spec.action_lower[i] + sc.spec.action_upper[i]);
      }
      sc.dynamics = cfg;
    }
    sc.dynamics->epsilon = *ov.epsilon;
  }
  // ov.seed is consumed directly by the validate command; nothing to merge.
}

}  // namespace lcg
