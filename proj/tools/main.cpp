// Command-line front end for the gate-protection simulator.
//
// Exit codes: 0 success, 1 usage or config error, 2 numerical failure,
// 3 failed check (decoupling residual or convergence gate).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cdd/control.hpp"
#include "cdd/errors.hpp"
#include "cdd/scenario.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitCheckFailed = 3;
constexpr double kDecouplingTol = 1e-9;

cdd::Scenario select_scenario(const std::string& preset, const std::string& config_path) {
  if (!config_path.empty()) {
    const cdd::ConfigFile file = cdd::load_config_file(config_path);
    return cdd::Scenario{config_path, cdd::to_simulation_config(file), file.field_enabled};
  }
  return cdd::preset_scenario(preset);
}

int cmd_run(const cdd::Scenario& sc, const std::string& out_path) {
  const cdd::Trajectory traj = cdd::run_scenario(sc);
  if (out_path.empty()) {
    cdd::write_trajectory_csv(std::cout, sc, traj);
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open output file '" << out_path << "'\n";
    return kExitUsage;
  }
  cdd::write_trajectory_csv(out, sc, traj);
  return 0;
}

int cmd_run_all(const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "cannot create output directory '" << out_dir << "': " << ec.message()
              << "\n";
    return kExitUsage;
  }
  const std::vector<std::string> names = cdd::preset_names();
  std::vector<std::future<std::string>> jobs;
  jobs.reserve(names.size());
  for (const std::string& name : names)
    jobs.push_back(std::async(std::launch::async, [name] {
      const cdd::Scenario sc = cdd::preset_scenario(name);
      return cdd::trajectory_csv(sc, cdd::run_scenario(sc));
    }));
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string csv = jobs[i].get();
    const std::string path = out_dir + "/" + names[i] + ".csv";
    std::ofstream out(path);
    if (!out) {
      std::cerr << "cannot open output file '" << path << "'\n";
      return kExitUsage;
    }
    out << csv;
    std::cout << path << "\n";
  }
  return 0;
}

int cmd_check_decoupling(const cdd::ControlField& field, int nodes) {
  const double residual = cdd::decoupling_residual(field, nodes);
  std::printf("windings (%g, %g), %d nodes: residual %.6e [%s]\n", field.winding_x(),
              field.winding_z(), nodes, residual,
              residual < kDecouplingTol ? "ok" : "FAIL");
  return residual < kDecouplingTol ? 0 : kExitCheckFailed;
}

int cmd_converge(const cdd::Scenario& sc, int refinements) {
  const cdd::ConvergenceReport report = cdd::convergence_report(sc, refinements);
  std::printf("%10s  %18s  %12s  %18s  %12s\n", "n_steps", "fidelity", "delta",
              "concurrence", "delta");
  for (const cdd::ConvergenceRow& row : report.rows)
    std::printf("%10d  %18.15f  %12.3e  %18.15f  %12.3e\n", row.n_steps,
                row.final_fidelity, row.fidelity_delta, row.final_concurrence,
                row.concurrence_delta);
  std::printf("%s (last fidelity delta %.3e, gate 1e-4)\n",
              report.passed ? "converged" : "NOT converged",
              report.rows.back().fidelity_delta);
  return report.passed ? 0 : kExitCheckFailed;
}

int cmd_presets() {
  for (const std::string& name : cdd::preset_names()) {
    const cdd::ConfigFile cfg = cdd::preset_config(name);
    std::printf("%-8s %-12s %s\n", name.c_str(),
                cfg.topology == cdd::CouplingTopology::Common ? "common" : "independent",
                cfg.field_enabled ? "protected" : "unprotected");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-qubit exchange-gate simulator with continuous decoupling"};
  app.require_subcommand(1);

  std::string preset = "fig1a";
  std::string config_path;
  std::string out_path;
  std::string out_dir = ".";
  bool all_presets = false;
  int nodes = 4001;
  int refinements = 3;
  int winding_x = 0;
  int winding_z = 0;
  double t_c = 1.0;

  CLI::App* run = app.add_subcommand("run", "integrate a scenario and emit trajectory CSV");
  auto* run_preset = run->add_option("--preset", preset, "preset name (default fig1a)");
  auto* run_config = run->add_option("--config", config_path, "config file path");
  auto* run_out = run->add_option("-o,--output", out_path, "CSV output path (default stdout)");
  auto* run_all = run->add_flag("--all-presets", all_presets, "run all presets concurrently");
  auto* run_dir = run->add_option("--out-dir", out_dir, "directory for --all-presets CSVs");
  run_preset->excludes(run_config);
  run_all->excludes(run_preset)->excludes(run_config)->excludes(run_out);
  run_dir->needs(run_all);

  CLI::App* check = app.add_subcommand(
      "check-decoupling", "quadrature check that the control averages the couplings to zero");
  auto* check_preset = check->add_option("--preset", preset, "preset supplying the field");
  auto* check_config = check->add_option("--config", config_path, "config file supplying the field");
  auto* check_wx = check->add_option("--winding-x", winding_x, "x winding number (with --winding-z)");
  auto* check_wz = check->add_option("--winding-z", winding_z, "z winding number");
  check->add_option("--t-c", t_c, "cycle time for explicit windings")->needs(check_wx);
  check->add_option("--nodes", nodes, "Simpson nodes (odd, default 4001)");
  check_preset->excludes(check_config)->excludes(check_wx);
  check_config->excludes(check_wx);
  check_wx->needs(check_wz);
  check_wz->needs(check_wx);

  CLI::App* converge = app.add_subcommand(
      "converge", "rerun with doubled n_steps and report final-value deltas");
  auto* conv_preset = converge->add_option("--preset", preset, "preset name (default fig1a)");
  auto* conv_config = converge->add_option("--config", config_path, "config file path");
  converge->add_option("--refinements", refinements, "number of runs, doubling n_steps (>= 2)");
  conv_preset->excludes(conv_config);

  app.add_subcommand("presets", "list the built-in scenario presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) {
      if (all_presets) return cmd_run_all(out_dir);
      return cmd_run(select_scenario(preset, config_path), out_path);
    }
    if (check->parsed()) {
      const cdd::ControlField field =
          check_wx->count() ? cdd::ControlField::from_windings(winding_x, winding_z, t_c)
                            : select_scenario(preset, config_path).config.field;
      return cmd_check_decoupling(field, nodes);
    }
    if (converge->parsed())
      return cmd_converge(select_scenario(preset, config_path), refinements);
    return cmd_presets();
  } catch (const cdd::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const cdd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  }
}
