#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "lcg/scenario.hpp"

namespace lcg::cli {

// Exit codes: 0 success, 1 failed validation verdict, 2 configuration or
// scenario errors, 3 solver failures, 4 I/O failures.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitIo = 4;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Table, Json, Csv };
enum class SolveKind { Nash, Pareto, Ce };
enum class AnalyzeKind { Stability, Poa, Conservativeness };

// Every command wraps its outcome in a report: the command line it answers,
// the resolved scenario, the result payload and wall time of the solve.
// Serialized reports round-trip through JSON.
struct RunReport {
  std::string command;
  nlohmann::json scenario;
  nlohmann::json result;
  double duration_ms = 0.0;

  nlohmann::json to_json() const;
};

RunReport cmd_solve(SolveKind kind, const Scenario& sc, OutputFormat format,
                    std::ostream& out);

// Writes the trajectory to out_path ("-" for stdout) and a one-line summary
// to `out`. CSV rows are t, actions, utilities, states at 12 significant
// digits under the header t,a_1,...,a_N,u_1,...,u_N,s_1,...,s_N.
RunReport cmd_simulate(const Scenario& sc, const std::string& out_path,
                       OutputFormat format, std::ostream& out);

RunReport cmd_analyze(AnalyzeKind kind, const Scenario& sc, OutputFormat format,
                      std::ostream& out);

// Prints one verdict line per assumption; report.result["all_pass"] drives
// the exit code.
RunReport cmd_validate(const Scenario& sc, int samples, std::uint64_t seed,
                       OutputFormat format, std::ostream& out);

std::string format_sig(double v, int digits = 12);

}  // namespace lcg::cli
