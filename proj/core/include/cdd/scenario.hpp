#pragma once

// Run configuration as documents and named presets.  Config files are plain
// key=value text with optional [section] headers and # comments.  Keys:
//
//   J, t_c, field_enabled, Nx, Nz, eta, omega_c, T_kelvin, tau_seconds,
//   topology, channels, t_final, n_steps, initial_state
//
// Every key is optional; an empty file selects the default protected run
// (J = pi/8, windings 14 and 7 over t_c = 1, eta = 1/20, omega_c = 2 pi,
// T = 0.2 K at tau = 1 ns, independent baths, both standard channels,
// 2000 steps to t_final = 1, initial state |ud>).  eta is the total
// system-environment coupling; it is split evenly across the enabled
// channels, each of which couples through its own bath.  Unknown or
// repeated keys are rejected with their line number.

#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

#include "cdd/solver.hpp"

namespace cdd {

// Config-file syntax or value errors; the message carries the line number.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InitialStateKind { UpDown, DownUp, UpUp, DownDown, Singlet, TripletZero };

// The file-level view of a run: exactly the key=value surface, retained so a
// parsed config can be serialized back to an equivalent document
// (T_kelvin/tau_seconds exist only here; the engine sees the derived theta).
struct ConfigFile {
  double j = std::numbers::pi / 8.0;
  double t_c = 1.0;
  bool field_enabled = true;
  double nx = 28.0 * std::numbers::pi;  // winding 14 over t_c = 1
  double nz = 14.0 * std::numbers::pi;  // winding 7
  double eta = 0.05;
  double omega_c = 2.0 * std::numbers::pi;
  double t_kelvin = 0.2;
  double tau_seconds = 1e-9;
  CouplingTopology topology = CouplingTopology::Independent;
  std::vector<ChannelKind> channels{ChannelKind::AmplitudeDamping, ChannelKind::Dephasing};
  double t_final = 1.0;
  int n_steps = 2000;
  InitialStateKind initial_state = InitialStateKind::UpDown;

  friend bool operator==(const ConfigFile&, const ConfigFile&) = default;
};

// Parses config text.  Throws ConfigError (syntax, unknown/repeated key, bad
// value) with the offending line number.
ConfigFile parse_config_text(const std::string& text);
ConfigFile load_config_file(const std::string& path);

// Validated engine configuration; throws std::invalid_argument when a value
// violates a simulation invariant (e.g. n_steps too coarse for the field).
SimulationConfig to_simulation_config(const ConfigFile& file);

// parse + validate in one step.
SimulationConfig parse_config(const std::string& text);

// Round-trip companion of parse_config_text: 17-significant-digit values,
// reparsing yields an identical ConfigFile.
std::string serialize_config(const ConfigFile& file);

PureState4 initial_pure_state(InitialStateKind kind);

struct Scenario {
  std::string name;
  SimulationConfig config;
  bool is_protected = true;
};

// Preset grid: fig1a/fig1b are the independent-bath runs with the field on
// and off; fig1c/fig1d the same pair over a common bath.
ConfigFile preset_config(const std::string& name);
Scenario preset_scenario(const std::string& name);
std::vector<std::string> preset_names();

// The same scenario with the protection flag flipped.
Scenario unprotected_twin(const Scenario& sc);

// Integrates the scenario and renders one CSV row per grid point with
// columns t,fidelity,concurrence,purity,trace_error,min_eigenvalue at 17
// significant digits.  Fidelity is overlap with the initial state in the
// interaction picture; concurrence is evaluated in the lab frame.
Trajectory run_scenario(const Scenario& sc);
void write_trajectory_csv(std::ostream& out, const Scenario& sc, const Trajectory& traj);
std::string trajectory_csv(const Scenario& sc, const Trajectory& traj);

struct ConvergenceRow {
  int n_steps = 0;
  double final_fidelity = 0.0;
  double final_concurrence = 0.0;
  double fidelity_delta = 0.0;     // vs. previous row; 0 for the first
  double concurrence_delta = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool passed = false;  // |last fidelity delta| < 1e-4
};

// Reruns the scenario `refinements` times (>= 2), doubling n_steps each
// time, and reports successive final-value deltas.
ConvergenceReport convergence_report(const Scenario& sc, int refinements);

}  // namespace cdd
