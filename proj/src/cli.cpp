#include "lcg/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "lcg/conjecture.hpp"
#include "lcg/equilibria.hpp"
#include "lcg/model.hpp"

namespace lcg::cli {

namespace {

using nlohmann::json;

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::vector<double> lambda_or_default(const Scenario& sc) {
  if (sc.lambda) return *sc.lambda;
  return sc.spec.tau;  // true slopes: plain best-response behaviour
}

const Weights& require_weights(const Scenario& sc, const char* command) {
  if (!sc.weights) {
    std::ostringstream os;
    os << "weights: required by '" << command
       << "' (set them in the scenario or pass --weights)";
    throw SpecError(os.str());
  }
  return *sc.weights;
}

const std::vector<double>& require_lambda(const Scenario& sc,
                                          const char* command) {
  if (!sc.lambda) {
    std::ostringstream os;
    os << "lambda: required by '" << command
       << "' (set it in the scenario or pass --lambda)";
    throw SpecError(os.str());
  }
  return *sc.lambda;
}

DynamicsConfig dynamics_or_default(const Scenario& sc) {
  if (sc.dynamics) return *sc.dynamics;
  DynamicsConfig cfg;
  cfg.initial.resize(sc.spec.n_users());
  for (std::size_t i = 0; i < cfg.initial.size(); ++i) {
    cfg.initial[i] = 0.5 * (sc.spec.action_lower[i] + sc.spec.action_upper[i]);
  }
  return cfg;
}

json equilibrium_to_json(const GameSpec& spec, const EquilibriumResult& eq) {
  json out;
  switch (eq.kind) {
    case EquilibriumKind::Nash:
      out["kind"] = "nash";
      break;
    case EquilibriumKind::ParetoPoint:
      out["kind"] = "pareto";
      break;
    case EquilibriumKind::Conjectural:
      out["kind"] = "ce";
      break;
  }
  out["actions"] = eq.actions;
  out["utilities"] = eq.utilities;
  out["states"] = evaluate(spec, eq.actions).s;
  out["residual"] = eq.residual;
  if (eq.weights_used) out["weights"] = *eq.weights_used;
  return out;
}

// The table view shows only the per-user solution, so solves that land on the
// same profile print the same bytes regardless of which solver produced them.
void print_equilibrium_table(const EquilibriumResult& eq, std::ostream& out) {
  out << std::setw(6) << "user" << std::setw(14) << "action" << std::setw(14)
      << "utility" << "\n";
  std::ostringstream row;
  row << std::fixed << std::setprecision(4);
  for (std::size_t i = 0; i < eq.actions.size(); ++i) {
    row.str("");
    row << std::setw(6) << (i + 1) << std::setw(14) << eq.actions[i]
        << std::setw(14) << eq.utilities[i];
    out << row.str() << "\n";
  }
}

void print_equilibrium_csv(const EquilibriumResult& eq, std::ostream& out) {
  out << "user,action,utility\n";
  for (std::size_t i = 0; i < eq.actions.size(); ++i) {
    out << (i + 1) << "," << format_sig(eq.actions[i]) << ","
        << format_sig(eq.utilities[i]) << "\n";
  }
}

void print_report_json(const RunReport& report, std::ostream& out) {
  out << report.to_json().dump(2) << "\n";
}

void print_key_value_rows(OutputFormat format,
                          const std::vector<std::pair<std::string, std::string>>& rows,
                          std::ostream& out) {
  if (format == OutputFormat::Csv) {
    out << "key,value\n";
    for (const auto& [k, v] : rows) out << k << "," << v << "\n";
  } else {
    for (const auto& [k, v] : rows) out << k << ": " << v << "\n";
  }
}

std::string join_sig(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += " ";
    s += format_sig(values[i]);
  }
  return s;
}

const char* outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::Converged:
      return "converged";
    case Outcome::MaxItersReached:
      return "max_iters_reached";
    case Outcome::Diverged:
      return "diverged";
  }
  return "unknown";
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  const std::size_t n = traj.points.empty() ? 0 : traj.points.front().a.size();
  out << "t";
  for (std::size_t i = 1; i <= n; ++i) out << ",a_" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",u_" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",s_" << i;
  out << "\n";
  for (const auto& p : traj.points) {
    out << p.t;
    for (double v : p.a) out << "," << format_sig(v);
    for (double v : p.u) out << "," << format_sig(v);
    for (double v : p.s) out << "," << format_sig(v);
    out << "\n";
  }
}

void write_trajectory_table(const Trajectory& traj, std::ostream& out) {
  const std::size_t n = traj.points.empty() ? 0 : traj.points.front().a.size();
  out << std::setw(8) << "t";
  for (std::size_t i = 1; i <= n; ++i) out << std::setw(14) << ("a_" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) out << std::setw(14) << ("u_" + std::to_string(i));
  out << "\n";
  std::ostringstream row;
  row << std::fixed << std::setprecision(6);
  for (const auto& p : traj.points) {
    row.str("");
    row << std::setw(8) << p.t;
    for (double v : p.a) row << std::setw(14) << v;
    for (double v : p.u) row << std::setw(14) << v;
    out << row.str() << "\n";
  }
}

json trajectory_to_json(const Trajectory& traj) {
  json out;
  out["outcome"] = outcome_name(traj.outcome);
  out["iterations"] = traj.iterations;
  json points = json::array();
  for (const auto& p : traj.points) {
    points.push_back({{"t", p.t}, {"a", p.a}, {"u", p.u}, {"s", p.s}});
  }
  out["points"] = std::move(points);
  return out;
}

const char* branch_name(CouplingBranch branch) {
  switch (branch) {
    case CouplingBranch::ZeroDiagonal:
      return "zero_diagonal";
    case CouplingBranch::EqualRatio:
      return "equal_ratio";
    case CouplingBranch::Neither:
      return "neither";
  }
  return "neither";
}

}  // namespace

std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

json RunReport::to_json() const {
  return json{{"command", command},
              {"scenario", scenario},
              {"result", result},
              {"duration_ms", duration_ms}};
}

RunReport cmd_solve(SolveKind kind, const Scenario& sc, OutputFormat format,
                    std::ostream& out) {
  Stopwatch clock;
  RunReport report;
  report.scenario = scenario_to_json(sc);

  EquilibriumResult eq;
  switch (kind) {
    case SolveKind::Nash:
      report.command = "solve ne";
      eq = sc.spec.family == Family::TypeII ? nash_type2(sc.spec)
                                            : nash_type1(sc.spec);
      break;
    case SolveKind::Pareto: {
      report.command = "solve pareto";
      const Weights& w = require_weights(sc, "solve pareto");
      eq = sc.spec.family == Family::TypeII ? pareto_type2(sc.spec, w)
                                            : pareto_type1(sc.spec, w);
      break;
    }
    case SolveKind::Ce:
      report.command = "solve ce";
      eq = ce_closed_form(sc.spec, require_lambda(sc, "solve ce"));
      break;
  }
  report.result = equilibrium_to_json(sc.spec, eq);
  if (kind == SolveKind::Ce) report.result["lambda"] = *sc.lambda;
  report.duration_ms = clock.ms();

  switch (format) {
    case OutputFormat::Table:
      print_equilibrium_table(eq, out);
      break;
    case OutputFormat::Csv:
      print_equilibrium_csv(eq, out);
      break;
    case OutputFormat::Json:
      print_report_json(report, out);
      break;
  }
  return report;
}

RunReport cmd_simulate(const Scenario& sc, const std::string& out_path,
                       OutputFormat format, std::ostream& out) {
  Stopwatch clock;
  RunReport report;
  report.command = "simulate";
  report.scenario = scenario_to_json(sc);

  const std::vector<double> lambda = lambda_or_default(sc);
  const DynamicsConfig cfg = dynamics_or_default(sc);
  const Trajectory traj = run_dynamics(sc.spec, lambda, cfg);

  const TrajectoryPoint& last = traj.points.back();
  report.result = {{"outcome", outcome_name(traj.outcome)},
                   {"iterations", traj.iterations},
                   {"rows", traj.points.size()},
                   {"lambda", lambda},
                   {"final_actions", last.a},
                   {"final_utilities", last.u},
                   {"final_states", last.s}};
  report.duration_ms = clock.ms();

  const auto write_payload = [&](std::ostream& dest) {
    switch (format) {
      case OutputFormat::Csv:
        write_trajectory_csv(traj, dest);
        break;
      case OutputFormat::Table:
        write_trajectory_table(traj, dest);
        break;
      case OutputFormat::Json: {
        json payload = report.to_json();
        payload["result"]["points"] = trajectory_to_json(traj)["points"];
        dest << payload.dump(2) << "\n";
        break;
      }
    }
  };

  if (out_path == "-") {
    write_payload(out);
  } else {
    std::ofstream file(out_path);
    if (!file) {
      throw IoError("cannot write trajectory file '" + out_path + "'");
    }
    write_payload(file);
    file.flush();
    if (!file) {
      throw IoError("failed while writing trajectory file '" + out_path + "'");
    }
    out << "wrote " << traj.points.size() << " rows to " << out_path << " ("
        << outcome_name(traj.outcome) << " after " << traj.iterations
        << " iterations)\n";
  }
  return report;
}

RunReport cmd_analyze(AnalyzeKind kind, const Scenario& sc, OutputFormat format,
                      std::ostream& out) {
  Stopwatch clock;
  RunReport report;
  report.scenario = scenario_to_json(sc);
  std::vector<std::pair<std::string, std::string>> rows;

  switch (kind) {
    case AnalyzeKind::Stability: {
      report.command = "analyze stability";
      const std::vector<double> lambda = lambda_or_default(sc);
      const StabilityReport st = stability_analysis(sc.spec, lambda);
      report.result = {{"lambda", lambda},
                       {"eigenvalues", st.spectrum.eigenvalues},
                       {"spectral_radius", st.spectrum.spectral_radius},
                       {"condition_value", st.condition_value},
                       {"br_converges", st.br_converges},
                       {"jacobi_epsilon_bound", st.jacobi_epsilon_bound}};
      rows.emplace_back("eigenvalues", join_sig(st.spectrum.eigenvalues));
      rows.emplace_back("spectral_radius",
                        format_sig(st.spectrum.spectral_radius));
      rows.emplace_back("condition_value", format_sig(st.condition_value));
      rows.emplace_back("br_converges", st.br_converges ? "yes" : "no");
      rows.emplace_back("jacobi_epsilon_bound",
                        format_sig(st.jacobi_epsilon_bound));
      if (sc.dynamics && sc.dynamics->rule == UpdateRule::Jacobi) {
        const SpectrumResult shifted =
            jacobi_spectrum_shift(st.spectrum, sc.dynamics->epsilon);
        report.result["jacobi_eigenvalues"] = shifted.eigenvalues;
        report.result["jacobi_spectral_radius"] = shifted.spectral_radius;
        rows.emplace_back("jacobi_eigenvalues", join_sig(shifted.eigenvalues));
        rows.emplace_back("jacobi_spectral_radius",
                          format_sig(shifted.spectral_radius));
      }
      break;
    }
    case AnalyzeKind::Poa: {
      report.command = "analyze poa";
      const Weights& w = require_weights(sc, "analyze poa");
      const PoAReport poa = price_of_anarchy(sc.spec, w);
      report.result = {{"weights", w},
                       {"gap", poa.gap},
                       {"lower_bound", poa.lower_bound},
                       {"upper_bound", poa.upper_bound}};
      rows.emplace_back("gap", format_sig(poa.gap));
      rows.emplace_back("lower_bound", format_sig(poa.lower_bound));
      rows.emplace_back("upper_bound", format_sig(poa.upper_bound));
      break;
    }
    case AnalyzeKind::Conservativeness: {
      report.command = "analyze conservativeness";
      const std::vector<double>& lambda =
          require_lambda(sc, "analyze conservativeness");
      const ConservativenessProfile prof =
          conservativeness(sc.spec, lambda);
      const bool pareto_optimal = std::fabs(prof.total - 1.0) <= 1e-9;
      report.result = {{"lambda", lambda},
                       {"c", prof.c},
                       {"total", prof.total},
                       {"pareto_optimal", pareto_optimal}};
      rows.emplace_back("c", join_sig(prof.c));
      rows.emplace_back("total", format_sig(prof.total));
      rows.emplace_back("pareto_optimal", pareto_optimal ? "yes" : "no");
      break;
    }
  }
  report.duration_ms = clock.ms();

  if (format == OutputFormat::Json) {
    print_report_json(report, out);
  } else {
    print_key_value_rows(format, rows, out);
  }
  return report;
}

RunReport cmd_validate(const Scenario& sc, int samples, std::uint64_t seed,
                       OutputFormat format, std::ostream& out) {
  Stopwatch clock;
  RunReport report;
  report.command = "validate";
  report.scenario = scenario_to_json(sc);

  const ValidationReport vr = validate_assumptions(sc.spec, samples, seed);
  const auto check_json = [](const AssumptionCheck& c) {
    return json{{"pass", c.pass}, {"worst_residual", c.worst_residual}};
  };
  report.result = {{"state_nonnegativity", check_json(vr.a1)},
                   {"affine_decreasing_coupling", check_json(vr.a2)},
                   {"smooth_impact_ratio", check_json(vr.a3)},
                   {"proportional_cross_impact", check_json(vr.a4)},
                   {"coupling_branch", branch_name(vr.a4_branch)},
                   {"samples_used", vr.samples_used},
                   {"all_pass", vr.all_pass()}};
  report.duration_ms = clock.ms();

  if (format == OutputFormat::Json) {
    print_report_json(report, out);
    return report;
  }

  const auto line = [&](const char* label, const AssumptionCheck& c,
                        const std::string& extra = "") {
    if (format == OutputFormat::Csv) {
      out << label << "," << (c.pass ? "pass" : "fail") << ","
          << format_sig(c.worst_residual) << "\n";
    } else {
      out << (c.pass ? "[PASS] " : "[FAIL] ") << label << " (worst residual "
          << format_sig(c.worst_residual, 3) << ")" << extra << "\n";
    }
  };
  if (format == OutputFormat::Csv) out << "assumption,verdict,worst_residual\n";
  line("state nonnegativity", vr.a1);
  line("affine decreasing coupling", vr.a2);
  line("smooth impact ratio", vr.a3);
  line("proportional cross-impact", vr.a4,
       std::string(" [branch: ") + branch_name(vr.a4_branch) + "]");
  if (format != OutputFormat::Csv) {
    out << (vr.all_pass() ? "all assumptions hold"
                          : "assumption checks FAILED")
        << " (" << vr.samples_used << " samples)\n";
  }
  return report;
}

}  // namespace lcg::cli
