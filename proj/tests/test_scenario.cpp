#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "cdd/scenario.hpp"

using namespace cdd;

namespace {

// A short run keeps CSV and determinism tests fast: 150 steps over 0.1.
Scenario short_scenario() {
  Scenario sc = preset_scenario("fig1a");
  sc.config.t_final = 0.1;
  sc.config.n_steps = 150;
  return sc;
}

void check_parse_error(const std::string& text, const std::string& needle) {
  try {
    parse_config_text(text);
    FAIL("expected ConfigError for: " << text);
  } catch (const ConfigError& e) {
    CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                  "message '" << e.what() << "' lacks '" << needle << "'");
  }
}

}  // namespace

TEST_CASE("empty text selects the default run") {
  CHECK(parse_config_text("") == ConfigFile{});
  CHECK(parse_config_text("\n\n# only comments\n[gate]\n") == ConfigFile{});
}

TEST_CASE("all keys parse and round-trip") {
  const std::string text =
      "J = 0.3\n"
      "t_c = 0.5\n"
      "field_enabled = true\n"
      "Nx = 12.566370614359172\n"  // winding 1 over t_c = 0.5
      "Nz = 25.132741228718345\n"
      "eta = 0.02\n"
      "omega_c = 5.0\n"
      "T_kelvin = 0.15\n"
      "tau_seconds = 2e-9\n"
      "topology = common\n"
      "channels = dephasing\n"
      "t_final = 2.0\n"
      "n_steps = 4000\n"
      "initial_state = singlet\n";
  const ConfigFile file = parse_config_text(text);
  CHECK(file.j == 0.3);
  CHECK(file.t_c == 0.5);
  CHECK(file.field_enabled);
  CHECK(file.eta == 0.02);
  CHECK(file.omega_c == 5.0);
  CHECK(file.t_kelvin == 0.15);
  CHECK(file.tau_seconds == 2e-9);
  CHECK(file.topology == CouplingTopology::Common);
  REQUIRE(file.channels.size() == 1);
  CHECK(file.channels[0] == ChannelKind::Dephasing);
  CHECK(file.t_final == 2.0);
  CHECK(file.n_steps == 4000);
  CHECK(file.initial_state == InitialStateKind::Singlet);

  CHECK(parse_config_text(serialize_config(file)) == file);
  CHECK(parse_config_text(serialize_config(ConfigFile{})) == ConfigFile{});
}

TEST_CASE("sections and comments are cosmetic") {
  const ConfigFile a = parse_config_text("[gate]\nJ = 0.2\n# comment\n[bath]\neta = 0.01\n");
  ConfigFile b;
  b.j = 0.2;
  b.eta = 0.01;
  CHECK(a == b);
}

TEST_CASE("parse errors carry their line number") {
  check_parse_error("J = 0.3\nbogus_key = 1\n", "line 2");
  check_parse_error("J = 0.3\nJ = 0.4\n", "line 2");
  check_parse_error("J = fast\n", "line 1");
  check_parse_error("n_steps = 2.5\n", "line 1");
  check_parse_error("field_enabled = maybe\n", "line 1");
  check_parse_error("topology = nearby\n", "line 1");
  check_parse_error("channels = \n", "line 1");
  check_parse_error("channels = dephasing + dephasing\n", "line 1");
  check_parse_error("channels = sparkle\n", "line 1");
  check_parse_error("initial_state = ghz\n", "line 1");
  check_parse_error("J 0.3\n", "line 1");          // no separator
  check_parse_error("[gate\nJ = 0.3\n", "line 1");  // unterminated section
  check_parse_error("\n\n = 0.3\n", "line 3");      // empty key
}

TEST_CASE("missing config file reports its path") {
  try {
    load_config_file("/nonexistent/run.cfg");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/run.cfg") != std::string::npos);
  }
}

TEST_CASE("config files load from disk") {
  const std::string path = "scenario_roundtrip.cfg";
  {
    std::ofstream out(path);
    ConfigFile file;
    file.eta = 0.03;
    file.n_steps = 2500;
    out << serialize_config(file);
  }
  const ConfigFile loaded = load_config_file(path);
  CHECK(loaded.eta == 0.03);
  CHECK(loaded.n_steps == 2500);
  std::remove(path.c_str());
}

TEST_CASE("total coupling is split across the enabled channels") {
  ConfigFile file;  // both standard channels
  file.eta = 0.05;
  CHECK(to_simulation_config(file).spectral.eta == 0.025);

  file.channels = {ChannelKind::Dephasing};
  CHECK(to_simulation_config(file).spectral.eta == 0.05);

  file.eta = 0.0;
  CHECK(to_simulation_config(file).spectral.eta == 0.0);
}

TEST_CASE("engine-level validation surfaces through conversion") {
  ConfigFile file;
  file.n_steps = 10;
  CHECK_THROWS_AS(to_simulation_config(file), std::invalid_argument);

  file = ConfigFile{};
  file.n_steps = 100;  // too coarse for the default windings
  CHECK_THROWS_AS(to_simulation_config(file), std::invalid_argument);

  CHECK_THROWS_AS(parse_config("eta = -1\n"), std::invalid_argument);
  CHECK_NOTHROW(parse_config("eta = 0\n"));
}

TEST_CASE("conversion mirrors the file") {
  ConfigFile file;
  file.field_enabled = false;
  const SimulationConfig cfg = to_simulation_config(file);
  CHECK_FALSE(cfg.field.enabled());
  CHECK(cfg.exchange.j == file.j);
  CHECK(cfg.t_final == file.t_final);
  CHECK(cfg.n_steps == file.n_steps);
  CHECK(cfg.channels.size() == 2);

  // The default file is the default engine configuration.
  CHECK(to_simulation_config(ConfigFile{}) == SimulationConfig{});
}

TEST_CASE("presets differ only in topology and protection") {
  const auto names = preset_names();
  REQUIRE(names.size() == 4);
  CHECK(names[0] == "fig1a");
  CHECK(names[3] == "fig1d");

  CHECK(preset_config("fig1a") == ConfigFile{});

  const ConfigFile b = preset_config("fig1b");
  CHECK_FALSE(b.field_enabled);
  CHECK(b.topology == CouplingTopology::Independent);

  const ConfigFile c = preset_config("fig1c");
  CHECK(c.field_enabled);
  CHECK(c.topology == CouplingTopology::Common);

  const ConfigFile d = preset_config("fig1d");
  CHECK_FALSE(d.field_enabled);
  CHECK(d.topology == CouplingTopology::Common);

  // Everything else matches the protected independent run.
  ConfigFile d_neutral = d;
  d_neutral.field_enabled = true;
  d_neutral.topology = CouplingTopology::Independent;
  CHECK(d_neutral == ConfigFile{});

  CHECK_THROWS_AS(preset_config("fig1e"), std::invalid_argument);
  CHECK_THROWS_AS(preset_scenario(""), std::invalid_argument);

  const Scenario sa = preset_scenario("fig1a");
  CHECK(sa.name == "fig1a");
  CHECK(sa.is_protected);
  CHECK_FALSE(preset_scenario("fig1d").is_protected);
}

TEST_CASE("unprotected twin flips the protection") {
  const Scenario a = preset_scenario("fig1a");
  const Scenario twin = unprotected_twin(a);
  CHECK_FALSE(twin.is_protected);
  CHECK_FALSE(twin.config.field.enabled());
  CHECK(twin.name != a.name);

  const Scenario back = unprotected_twin(twin);
  CHECK(back.is_protected);
  CHECK(back.config == a.config);

  // fig1b's twin is the protected run.
  const Scenario b_twin = unprotected_twin(preset_scenario("fig1b"));
  CHECK(b_twin.is_protected);
  CHECK(b_twin.config == preset_scenario("fig1a").config);
}

TEST_CASE("trajectory CSV has the documented shape") {
  const Scenario sc = short_scenario();
  const Trajectory traj = run_scenario(sc);
  const std::string csv = trajectory_csv(sc, traj);

  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "t,fidelity,concurrence,purity,trace_error,min_eigenvalue");

  int rows = 0;
  std::string first_row;
  while (std::getline(lines, line)) {
    if (rows == 0) first_row = line;
    ++rows;
    // Six comma-separated finite fields per row.
    std::istringstream fields(line);
    std::string field;
    int count = 0;
    while (std::getline(fields, field, ',')) {
      ++count;
      CHECK(std::isfinite(std::stod(field)));
    }
    CHECK(count == 6);
  }
  CHECK(rows == sc.config.n_steps + 1);

  // Row 0: t = 0, perfect overlap, product state, unit purity.
  CHECK(first_row.substr(0, 6) == "0,1,0,");

  // Deterministic: same scenario, byte-identical output.
  CHECK(trajectory_csv(sc, run_scenario(sc)) == csv);

  std::ostringstream direct;
  write_trajectory_csv(direct, sc, traj);
  CHECK(direct.str() == csv);
}

TEST_CASE("convergence report tracks refinement deltas") {
  Scenario sc = short_scenario();
  sc.config.spectral.eta = 0.0;  // closed run: refinements agree exactly
  const ConvergenceReport report = convergence_report(sc, 2);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].n_steps == 150);
  CHECK(report.rows[1].n_steps == 300);
  CHECK(report.rows[0].fidelity_delta == 0.0);
  CHECK(std::abs(report.rows[1].fidelity_delta) < 1e-12);
  CHECK(std::abs(report.rows[1].concurrence_delta) < 1e-12);
  CHECK(report.passed);

  CHECK_THROWS_AS(convergence_report(sc, 1), std::invalid_argument);
  CHECK_THROWS_AS(convergence_report(sc, 13), std::invalid_argument);
}
