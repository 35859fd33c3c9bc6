#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmflow/constants.hpp"
#include "qmflow/wave_model.hpp"

// Batch verification suites. A scenario maps a short name to a fixed list of
// named checks; run_scenario executes them (concurrently, each check is pure)
// and emit_report writes report.json, summary.csv and the plot data files.
// With the seed fixed the whole report is reproducible byte for byte; the only
// varying fields are grouped under "meta" (timestamp, runtime).

namespace qmflow::scenario {

struct ScenarioConfig {
  std::string scenario = "central-field";
  std::string constants = "natural";  // "natural" or "SI"

  // Model parameters shared by the field scenarios.
  double nu = 1.0;
  double kappa = 1.0;
  int k = 1;
  bool energy_auto = true;  // E = -hbar^2 kappa^2 / (2 m) when true
  double energy = 0.0;      // used when energy_auto is false
  int Z = 1;

  double loop_radius = 1.0;
  int loop_turns = 1;

  // Sample counts.
  int points = 400;              // random field points per residual sweep
  int path_pairs = 100;          // shared-endpoint path pairs (contour suite)
  int family_members = 128;      // members of the equal-phase family (path demo)
  int steps_per_revolution = 1024;
  int revolutions = 1;

  std::uint64_t seed = 20260815;
  double tolerance_scale = 1.0;
  std::string out_dir = ".";

  static ScenarioConfig from_json_text(const std::string& text);
  static ScenarioConfig from_file(const std::string& path);

  // Canonical JSON echo of the effective configuration (stable key order).
  std::string to_json_text() const;

  // Throws ConfigError naming the offending field.
  void validate() const;

  PhysicalConstants constant_set() const;
  WaveModel model(const PhysicalConstants& c) const;
};

struct CheckResult {
  std::string name;
  std::string anchor;      // section/equation tag carried verbatim into reports
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string comparator = "abs";  // abs | rel | upper | lower
  bool pass = false;
  std::string error;  // exception text when the check aborted
};

struct Report {
  int schema = 1;
  std::string scenario;
  std::string config_echo;           // canonical config JSON text
  std::vector<CheckResult> checks;   // sorted by name
  int total = 0;
  int passed = 0;
  int failed = 0;
  bool pass = false;
  std::string timestamp;   // UTC, RFC 3339; lives under "meta" in the JSON
  double runtime_ms = 0.0; // ditto
  std::map<std::string, std::string> data_files;  // filename -> content

  std::string json_text() const;
  std::string summary_csv() const;
};

std::vector<std::string> scenario_names();

Report run_scenario(const ScenarioConfig& cfg);

// Writes report.json, summary.csv and every data file into dir (created if
// missing). Throws qmflow::Error on write failure.
void emit_report(const Report& rep, const std::string& dir);

}  // namespace qmflow::scenario
