// finadapt: finite-adaptability solver for two-stage robust linear programs
// over polytopal uncertainty sets.
//
// Exit codes: 0 optimal/verified, 2 infeasible/not covered, 3 unbounded,
// 4 input error, 5 method/instance mismatch.

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "finadapt/corpus.hpp"
#include "finadapt/instance_io.hpp"
#include "finadapt/render.hpp"
#include "finadapt/solvers.hpp"
#include "finadapt/verify.hpp"

namespace {

using namespace finadapt;

constexpr int kExitOptimal = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitUnbounded = 3;
constexpr int kExitInputError = 4;
constexpr int kExitMismatch = 5;

int status_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return kExitOptimal;
    case SolveStatus::Infeasible: return kExitInfeasible;
    case SolveStatus::Unbounded: return kExitUnbounded;
  }
  return kExitInputError;
}

struct SolveArgs {
  int k = 2;
  std::string method = "enum";
  std::string instance_path;
  std::string out_path;
  bool no_symmetry_pruning = false;
  double big_m = 0.0;
  bool big_m_set = false;
  int threads = 1;
};

int cmd_solve(const SolveArgs& args) {
  const Instance inst = load_instance_file(args.instance_path);
  EnumOptions options;
  options.symmetry_pruning = !args.no_symmetry_pruning;
  options.threads = args.threads;
  options.tolerances = Tolerances::from_env();
  if (args.big_m_set) options.big_m = args.big_m;

  SolveReport report;
  if (args.method == "comp") {
    report = solve_comp_adapt(inst, options);
  } else if (args.method == "1d") {
    report = solve_adapt_1d(inst, args.k, options);
  } else if (args.method == "milp") {
    if (args.k != 2) {
      std::cerr << "error: --method milp supports --k 2 only\n";
      return kExitInputError;
    }
    report = solve_adapt2_milp(inst, options);
  } else if (args.method == "enum") {
    if (args.k == 1)
      report = solve_adapt1(inst, options);
    else if (args.k == 2)
      report = solve_adapt2_enum(inst, options);
    else
      report = solve_adapt3_enum(inst, options);
  } else {
    std::cerr << "error: unknown method '" << args.method << "'\n";
    return kExitInputError;
  }

  if (report.status == SolveStatus::Optimal) {
    std::cout << "objective " << std::setprecision(12) << report.solution->objective << "\n";
    std::cout << "candidates " << report.candidates_explored << " lp_solves "
              << report.lp_solves << " wall_time_s " << std::setprecision(3)
              << report.wall_time_seconds << "\n";
    if (!args.out_path.empty()) {
      const CoverCertificate cert =
          args.method == "comp" ? CoverCertificate{}
                                : verify_cover(inst, *report.solution, 1e-6);
      write_text_file(args.out_path,
                      solution_to_json(inst, *report.solution,
                                       args.method == "comp" ? nullptr : &cert));
    }
  } else {
    std::cerr << (report.status == SolveStatus::Infeasible ? "INFEASIBLE" : "UNBOUNDED")
              << " after " << report.candidates_explored << " candidates\n";
  }
  return status_code(report.status);
}

int cmd_verify(const std::string& instance_path, const std::string& solution_path, double tol) {
  const Instance inst = load_instance_file(instance_path);
  const SolutionFileData data = load_solution_file(solution_path);
  const CoverCertificate cert = verify_cover(inst, data.solution, tol);
  if (cert.verdict != CoverVerdict::Covered) {
    std::cerr << "NOT COVERED: witness (";
    for (int i = 0; i < cert.witness->size(); ++i) {
      if (i) std::cerr << ", ";
      std::cerr << (*cert.witness)[i];
    }
    std::cerr << ") slack " << cert.max_uncovered_slack << "\n";
    return kExitInfeasible;
  }
  const double recomputed = objective_value(inst, data.solution);
  if (std::abs(recomputed - data.objective) > tol) {
    std::cerr << "COVERED but objective mismatch: claimed " << data.objective << ", recomputed "
              << recomputed << "\n";
    return kExitInfeasible;
  }
  if (!check_solution(inst, data.solution, data.objective, tol)) {
    std::cerr << "COVERED but integrality flags violated\n";
    return kExitInfeasible;
  }
  std::cout << "COVERED, objective " << recomputed << " (" << cert.lp_solves << " lp solves)\n";
  return kExitOptimal;
}

int cmd_lowerbound(const std::string& instance_path, int k, int grid,
                   const std::string& scenarios_path) {
  const Instance inst = load_instance_file(instance_path);
  std::vector<Eigen::VectorXd> scenarios;
  if (!scenarios_path.empty()) {
    scenarios = load_scenarios_file(scenarios_path);
  } else {
    if (grid < 2) {
      std::cerr << "error: --grid must be at least 2\n";
      return kExitInputError;
    }
    for (const auto& v : inst.omega.vertices()) scenarios.push_back(v);
    for (const auto& e : inst.omega.edges()) {
      for (int j = 1; j <= grid; ++j) {
        scenarios.push_back(
            inst.omega.edge_point(e, static_cast<double>(j) / static_cast<double>(grid + 1)));
      }
    }
  }
  EnumOptions options;
  options.tolerances = Tolerances::from_env();
  const SolveReport report = solve_scenario_lb(inst, scenarios, k, options);
  if (report.status == SolveStatus::Optimal) {
    std::cout << "bound " << std::setprecision(12) << report.solution->objective << "\n";
  } else if (report.status == SolveStatus::Infeasible) {
    std::cout << "INFEASIBLE\n";
  } else {
    std::cout << "UNBOUNDED\n";
  }
  return status_code(report.status);
}

int cmd_render(const std::string& instance_path, const std::string& solution_path,
               const std::string& out_path) {
  const Instance inst = load_instance_file(instance_path);
  const SolutionFileData data = load_solution_file(solution_path);
  write_text_file(out_path, render_cover_svg(inst, data.solution));
  std::cout << "wrote " << out_path << "\n";
  return kExitOptimal;
}

int cmd_export(const std::string& name, const std::string& out_path) {
  const CorpusEntry entry = get_instance(name);
  write_text_file(out_path, instance_to_json(entry.instance));
  std::cout << "wrote " << out_path << "\n";
  return kExitOptimal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finadapt: finite adaptability for two-stage robust linear optimization"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "solve a k-adaptability problem");
  solve->add_option("--k", solve_args.k, "number of second-stage policies")
      ->check(CLI::Range(1, 3));
  solve->add_option("--method", solve_args.method, "enum | milp | 1d | comp");
  solve->add_option("--instance", solve_args.instance_path, "instance JSON path")->required();
  solve->add_option("--out", solve_args.out_path, "solution JSON output path");
  solve->add_flag("--no-symmetry-pruning", solve_args.no_symmetry_pruning,
                  "enumerate raw candidates without orbit pruning");
  solve->add_option("--big-m", solve_args.big_m, "override the big-M constant")
      ->each([&](const std::string&) { solve_args.big_m_set = true; });
  solve->add_option("--threads", solve_args.threads, "enumeration worker threads")
      ->check(CLI::Range(1, 64));

  std::string verify_instance, verify_solution;
  double verify_tol = 1e-6;
  CLI::App* verify = app.add_subcommand("verify", "certify a solution file");
  verify->add_option("--instance", verify_instance)->required();
  verify->add_option("--solution", verify_solution)->required();
  verify->add_option("--tol", verify_tol);

  std::string lb_instance, lb_scenarios;
  int lb_k = 2, lb_grid = 0;
  CLI::App* lowerbound =
      app.add_subcommand("lowerbound", "scenario-relaxation lower bound");
  lowerbound->add_option("--instance", lb_instance)->required();
  lowerbound->add_option("--k", lb_k)->check(CLI::Range(1, 16));
  lowerbound->add_option("--grid", lb_grid, "points per edge of Omega");
  lowerbound->add_option("--scenarios", lb_scenarios, "scenario JSON path");

  std::string render_instance, render_solution, render_out;
  CLI::App* render = app.add_subcommand("render", "draw a 2-D cover as SVG");
  render->add_option("--instance", render_instance)->required();
  render->add_option("--solution", render_solution)->required();
  render->add_option("--out", render_out)->required();

  std::string export_name, export_out;
  CLI::App* exporter = app.add_subcommand("export", "write a built-in instance to JSON");
  exporter->add_option("--name", export_name)->required();
  exporter->add_option("--out", export_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_args);
    if (verify->parsed()) return cmd_verify(verify_instance, verify_solution, verify_tol);
    if (lowerbound->parsed()) return cmd_lowerbound(lb_instance, lb_k, lb_grid, lb_scenarios);
    if (render->parsed()) return cmd_render(render_instance, render_solution, render_out);
    if (exporter->parsed()) return cmd_export(export_name, export_out);
  } catch (const RequiresDeterministicAB& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const NotOneDimensional& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const NotTwoDimensional& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
