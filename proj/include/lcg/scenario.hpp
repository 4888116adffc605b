#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "lcg/dynamics.hpp"
#include "lcg/types.hpp"

namespace lcg {

// A scenario file: the game spec plus the optional solver inputs the
// subcommands pick from. Parsing is strict: unknown keys, wrong types, wrong
// lengths and out-of-range values all raise SpecError naming the field path.
struct Scenario {
  GameSpec spec;
  std::optional<Weights> weights;
  std::optional<std::vector<double>> lambda;
  std::optional<DynamicsConfig> dynamics;
};

Scenario parse_scenario(const nlohmann::json& doc, const std::string& source);

// Reads and parses a scenario file; unreadable paths raise SpecError, invalid
// JSON raises SpecError with the parser's position message.
Scenario parse_scenario_file(const std::string& path);

// Resolved scenario (defaults materialized) as JSON. Numbers are serialized
// losslessly so parse(print(x)) reproduces the GameSpec bit for bit.
nlohmann::json scenario_to_json(const Scenario& sc);

struct ScenarioOverrides {
  std::optional<Weights> weights;
  std::optional<std::vector<double>> lambda;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;  // picked up by `validate`
};

// Command-line flags win over file fields. Merged values are re-validated.
void apply_overrides(Scenario& sc, const ScenarioOverrides& ov);

}  // namespace lcg
