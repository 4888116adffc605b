// Command-line front end: solve, simulate, analyze and validate linearly
// coupled games described by JSON scenario files.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcg/cli.hpp"

namespace {

using lcg::Scenario;
using lcg::ScenarioOverrides;
using lcg::cli::AnalyzeKind;
using lcg::cli::OutputFormat;
using lcg::cli::SolveKind;

struct CommonArgs {
  std::string scenario_path;
  std::string format = "table";
  std::vector<double> weights;
  std::vector<double> lambda;
  double epsilon = 0.0;
  bool has_epsilon = false;
};

void add_common(CLI::App* cmd, CommonArgs* args, const char* default_format) {
  args->format = default_format;
  cmd->add_option("-s,--scenario", args->scenario_path,
                  "Scenario file (JSON)")
      ->required();
  cmd->add_option("-f,--format", args->format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("-w,--weights", args->weights,
                  "Override scenario weights (comma separated, sums to 1)")
      ->delimiter(',');
  cmd->add_option("-l,--lambda", args->lambda,
                  "Override scenario belief slopes (comma separated)")
      ->delimiter(',');
  cmd->add_option_function<double>(
         "-e,--epsilon",
         [args](double v) {
           args->epsilon = v;
           args->has_epsilon = true;
         },
         "Override the damped-update step size");
}

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  return OutputFormat::Table;
}

Scenario load_scenario(const CommonArgs& args) {
  Scenario sc = lcg::parse_scenario_file(args.scenario_path);
  ScenarioOverrides ov;
  if (!args.weights.empty()) ov.weights = args.weights;
  if (!args.lambda.empty()) ov.lambda = args.lambda;
  if (args.has_epsilon) ov.epsilon = args.epsilon;
  lcg::apply_overrides(sc, ov);
  return sc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver and simulator for linearly coupled games"};
  app.require_subcommand(1);

  CommonArgs solve_args, sim_args, analyze_args, validate_args;
  std::string solve_kind, analyze_kind;
  std::string sim_out = "-";
  int validate_samples = 64;
  std::uint64_t validate_seed = 1;

  CLI::App* solve = app.add_subcommand(
      "solve", "Compute an equilibrium or Pareto point in closed form");
  solve->add_option("kind", solve_kind, "ne | pareto | ce")
      ->required()
      ->check(CLI::IsMember({"ne", "pareto", "ce"}));
  add_common(solve, &solve_args, "table");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Iterate best-response or damped dynamics");
  add_common(simulate, &sim_args, "csv");
  simulate->add_option("-o,--out", sim_out,
                       "Trajectory destination ('-' for stdout)")
      ->capture_default_str();

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Stability, efficiency-gap or conservativeness reports");
  analyze->add_option("kind", analyze_kind,
                      "stability | poa | conservativeness")
      ->required()
      ->check(CLI::IsMember({"stability", "poa", "conservativeness"}));
  add_common(analyze, &analyze_args, "table");

  CLI::App* validate = app.add_subcommand(
      "validate", "Probe the structural assumptions on sampled profiles");
  add_common(validate, &validate_args, "table");
  validate->add_option("--samples", validate_samples,
                       "Profiles to sample per check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  validate->add_option("--seed", validate_seed, "Sampling seed")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? lcg::cli::kExitOk : lcg::cli::kExitConfig;
  }

  try {
    if (*solve) {
      const SolveKind kind = solve_kind == "ne"       ? SolveKind::Nash
                             : solve_kind == "pareto" ? SolveKind::Pareto
                                                      : SolveKind::Ce;
      lcg::cli::cmd_solve(kind, load_scenario(solve_args),
                          parse_format(solve_args.format), std::cout);
    } else if (*simulate) {
      lcg::cli::cmd_simulate(load_scenario(sim_args), sim_out,
                             parse_format(sim_args.format), std::cout);
    } else if (*analyze) {
      const AnalyzeKind kind = analyze_kind == "stability" ? AnalyzeKind::Stability
                               : analyze_kind == "poa"     ? AnalyzeKind::Poa
                                                           : AnalyzeKind::Conservativeness;
      lcg::cli::cmd_analyze(kind, load_scenario(analyze_args),
                            parse_format(analyze_args.format), std::cout);
    } else if (*validate) {
      const auto report =
          lcg::cli::cmd_validate(load_scenario(validate_args), validate_samples,
                                 validate_seed,
                                 parse_format(validate_args.format), std::cout);
      if (!report.result.at("all_pass").get<bool>()) {
        return lcg::cli::kExitValidationFailed;
      }
    }
  } catch (const lcg::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lcg::cli::kExitConfig;
  } catch (const lcg::cli::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lcg::cli::kExitIo;
  } catch (const lcg::SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lcg::cli::kExitSolver;
  }
  return lcg::cli::kExitOk;
}
