#include "cdd/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "cdd/metrics.hpp"

namespace cdd {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& what) {
  std::ostringstream msg;
  msg << "config line " << line << ": " << what;
  throw ConfigError(msg.str());
}

double parse_double(int line, const std::string& key, const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0') fail(line, "invalid number for " + key + ": '" + v + "'");
  return x;
}

int parse_int(int line, const std::string& key, const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const long x = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0' || x < INT_MIN || x > INT_MAX)
    fail(line, "invalid integer for " + key + ": '" + v + "'");
  return static_cast<int>(x);
}

bool parse_bool(int line, const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(line, "invalid boolean for " + key + ": '" + v + "'");
}

std::vector<ChannelKind> parse_channels(int line, const std::string& v) {
  std::vector<ChannelKind> kinds;
  std::string item;
  std::istringstream in(v);
  std::string normalized = v;
  std::replace(normalized.begin(), normalized.end(), ',', '+');
  std::istringstream parts(normalized);
  while (std::getline(parts, item, '+')) {
    const std::string name = trim(item);
    ChannelKind kind;
    if (name == "amplitude_damping")
      kind = ChannelKind::AmplitudeDamping;
    else if (name == "dephasing")
      kind = ChannelKind::Dephasing;
    else
      fail(line, "unknown channel '" + name + "'");
    if (std::find(kinds.begin(), kinds.end(), kind) != kinds.end())
      fail(line, "channel '" + name + "' listed twice");
    kinds.push_back(kind);
  }
  if (kinds.empty()) fail(line, "channels must name at least one channel");
  return kinds;
}

const char* channel_name(ChannelKind k) {
  return k == ChannelKind::AmplitudeDamping ? "amplitude_damping" : "dephasing";
}

const char* topology_name(CouplingTopology t) {
  return t == CouplingTopology::Common ? "common" : "independent";
}

const char* initial_state_name(InitialStateKind k) {
  switch (k) {
    case InitialStateKind::UpDown: return "updown";
    case InitialStateKind::DownUp: return "downup";
    case InitialStateKind::UpUp: return "upup";
    case InitialStateKind::DownDown: return "downdown";
    case InitialStateKind::Singlet: return "singlet";
    case InitialStateKind::TripletZero: return "triplet0";
  }
  return "updown";
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

ConfigFile parse_config_text(const std::string& text) {
  ConfigFile cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s[0] == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      continue;  // headers are organizational only
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key=value, got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (!seen.insert(key).second) fail(line, "key '" + key + "' repeated");

    if (key == "J")
      cfg.j = parse_double(line, key, value);
    else if (key == "t_c")
      cfg.t_c = parse_double(line, key, value);
    else if (key == "field_enabled")
      cfg.field_enabled = parse_bool(line, key, value);
    else if (key == "Nx")
      cfg.nx = parse_double(line, key, value);
    else if (key == "Nz")
      cfg.nz = parse_double(line, key, value);
    else if (key == "eta")
      cfg.eta = parse_double(line, key, value);
    else if (key == "omega_c")
      cfg.omega_c = parse_double(line, key, value);
    else if (key == "T_kelvin")
      cfg.t_kelvin = parse_double(line, key, value);
    else if (key == "tau_seconds")
      cfg.tau_seconds = parse_double(line, key, value);
    else if (key == "topology") {
      if (value == "independent")
        cfg.topology = CouplingTopology::Independent;
      else if (value == "common")
        cfg.topology = CouplingTopology::Common;
      else
        fail(line, "topology must be 'independent' or 'common', got '" + value + "'");
    } else if (key == "channels")
      cfg.channels = parse_channels(line, value);
    else if (key == "t_final")
      cfg.t_final = parse_double(line, key, value);
    else if (key == "n_steps")
      cfg.n_steps = parse_int(line, key, value);
    else if (key == "initial_state") {
      if (value == "updown")
        cfg.initial_state = InitialStateKind::UpDown;
      else if (value == "downup")
        cfg.initial_state = InitialStateKind::DownUp;
      else if (value == "upup")
        cfg.initial_state = InitialStateKind::UpUp;
      else if (value == "downdown")
        cfg.initial_state = InitialStateKind::DownDown;
      else if (value == "singlet")
        cfg.initial_state = InitialStateKind::Singlet;
      else if (value == "triplet0")
        cfg.initial_state = InitialStateKind::TripletZero;
      else
        fail(line, "unknown initial_state '" + value + "'");
    } else
      fail(line, "unknown key '" + key + "'");
  }
  return cfg;
}

ConfigFile load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

PureState4 initial_pure_state(InitialStateKind kind) {
  switch (kind) {
    case InitialStateKind::UpDown: return PureState4::up_down();
    case InitialStateKind::DownUp: return PureState4::down_up();
    case InitialStateKind::UpUp: return PureState4::up_up();
    case InitialStateKind::DownDown: return PureState4::down_down();
    case InitialStateKind::Singlet: return PureState4::singlet();
    case InitialStateKind::TripletZero: return PureState4::triplet_zero();
  }
  return PureState4::up_down();
}

SimulationConfig to_simulation_config(const ConfigFile& file) {
  // The configured eta is the total system-environment coupling; each enabled
  // channel couples through its own bath with an equal share.
  const double eta_per_channel =
      file.channels.empty() ? file.eta
                            : file.eta / static_cast<double>(file.channels.size());
  SimulationConfig cfg{
      .exchange = {file.j},
      .field = file.field_enabled ? ControlField(file.nx, file.nz, file.t_c)
                                  : ControlField::disabled(file.t_c),
      .channels = {},
      .topology = file.topology,
      .spectral = {eta_per_channel, file.omega_c},
      .bath = ThermalBath::from_kelvin(file.t_kelvin, file.tau_seconds),
      .t_final = file.t_final,
      .n_steps = file.n_steps,
      .initial_state = DensityMatrix4::pure(initial_pure_state(file.initial_state)),
  };
  for (const ChannelKind kind : file.channels)
    cfg.channels.push_back(kind == ChannelKind::AmplitudeDamping
                               ? amplitude_damping_channel()
                               : dephasing_channel());
  cfg.validate();
  return cfg;
}

SimulationConfig parse_config(const std::string& text) {
  return to_simulation_config(parse_config_text(text));
}

std::string serialize_config(const ConfigFile& file) {
  std::ostringstream out;
  out << "[gate]\n";
  out << "J = " << format_double(file.j) << "\n";
  out << "t_c = " << format_double(file.t_c) << "\n";
  out << "[control]\n";
  out << "field_enabled = " << (file.field_enabled ? "true" : "false") << "\n";
  out << "Nx = " << format_double(file.nx) << "\n";
  out << "Nz = " << format_double(file.nz) << "\n";
  out << "[bath]\n";
  out << "eta = " << format_double(file.eta) << "\n";
  out << "omega_c = " << format_double(file.omega_c) << "\n";
  out << "T_kelvin = " << format_double(file.t_kelvin) << "\n";
  out << "tau_seconds = " << format_double(file.tau_seconds) << "\n";
  out << "topology = " << topology_name(file.topology) << "\n";
  out << "channels = ";
  for (std::size_t i = 0; i < file.channels.size(); ++i) {
    if (i) out << "+";
    out << channel_name(file.channels[i]);
  }
  out << "\n";
  out << "[run]\n";
  out << "t_final = " << format_double(file.t_final) << "\n";
  out << "n_steps = " << file.n_steps << "\n";
  out << "initial_state = " << initial_state_name(file.initial_state) << "\n";
  return out.str();
}

ConfigFile preset_config(const std::string& name) {
  ConfigFile cfg;  // defaults: independent baths, field on
  if (name == "fig1a") return cfg;
  if (name == "fig1b") {
    cfg.field_enabled = false;
    return cfg;
  }
  if (name == "fig1c") {
    cfg.topology = CouplingTopology::Common;
    return cfg;
  }
  if (name == "fig1d") {
    cfg.topology = CouplingTopology::Common;
    cfg.field_enabled = false;
    return cfg;
  }
  throw std::invalid_argument("unknown preset '" + name +
                              "' (expected fig1a, fig1b, fig1c or fig1d)");
}

Scenario preset_scenario(const std::string& name) {
  const ConfigFile file = preset_config(name);
  return Scenario{name, to_simulation_config(file), file.field_enabled};
}

std::vector<std::string> preset_names() { return {"fig1a", "fig1b", "fig1c", "fig1d"}; }

Scenario unprotected_twin(const Scenario& sc) {
  Scenario twin = sc;
  const double t_c = sc.config.field.t_c();
  if (sc.is_protected) {
    twin.config.field = ControlField::disabled(t_c);
    twin.is_protected = false;
    twin.name = sc.name + "-unprotected";
  } else {
    twin.config.field = ControlField(28.0 * std::numbers::pi / t_c,
                                     14.0 * std::numbers::pi / t_c, t_c);
    twin.is_protected = true;
    twin.name = sc.name + "-protected";
  }
  return twin;
}

Trajectory run_scenario(const Scenario& sc) { return integrate(sc.config); }

void write_trajectory_csv(std::ostream& out, const Scenario& sc, const Trajectory& traj) {
  out << "t,fidelity,concurrence,purity,trace_error,min_eigenvalue\n";
  const DensityMatrix4& rho0 = sc.config.initial_state;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const double t = traj.times[i];
    const DensityMatrix4& rho = traj.states[i];
    const DensityMatrix4 lab = to_lab_frame(rho, sc.config.exchange, sc.config.field, t);
    out << format_double(t) << ',' << format_double(fidelity(rho, rho0)) << ','
        << format_double(concurrence(lab)) << ',' << format_double(purity(rho)) << ','
        << format_double(traj.diagnostics[i].trace_error) << ','
        << format_double(traj.diagnostics[i].min_eigenvalue) << '\n';
  }
}

std::string trajectory_csv(const Scenario& sc, const Trajectory& traj) {
  std::ostringstream out;
  write_trajectory_csv(out, sc, traj);
  return out.str();
}

ConvergenceReport convergence_report(const Scenario& sc, int refinements) {
  if (refinements < 2)
    throw std::invalid_argument("convergence_report: at least 2 refinements required");
  if (refinements > 12)
    throw std::invalid_argument("convergence_report: refinement ladder too deep");

  ConvergenceReport report;
  Scenario run = sc;
  const DensityMatrix4& rho0 = sc.config.initial_state;
  for (int k = 0; k < refinements; ++k) {
    const long steps = static_cast<long>(sc.config.n_steps) << k;
    if (steps > INT_MAX)
      throw std::invalid_argument("convergence_report: n_steps ladder overflows");
    run.config.n_steps = static_cast<int>(steps);
    const Trajectory traj = integrate(run.config);
    const DensityMatrix4& final_state = traj.states.back();
    ConvergenceRow row;
    row.n_steps = run.config.n_steps;
    row.final_fidelity = fidelity(final_state, rho0);
    row.final_concurrence = concurrence(to_lab_frame(
        final_state, run.config.exchange, run.config.field, traj.times.back()));
    if (!report.rows.empty()) {
      row.fidelity_delta = row.final_fidelity - report.rows.back().final_fidelity;
      row.concurrence_delta =
          row.final_concurrence - report.rows.back().final_concurrence;
    }
    report.rows.push_back(row);
  }
  report.passed = std::abs(report.rows.back().fidelity_delta) < 1e-4;
  return report;
}

}  // namespace cdd
