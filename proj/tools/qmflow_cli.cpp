#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qmflow/errors.hpp"
#include "qmflow/scenario.hpp"

namespace {

// Merge the command-line overrides into the raw config JSON before parsing,
// so scenario-dependent defaults (bohr-table implies SI constants) see the
// final scenario name.
std::string load_config_text(const std::string& path) {
  if (path.empty()) return "{}";
  std::ifstream in(path);
  if (!in) throw qmflow::ConfigError("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch verification scenarios for the vortex wave fields"};

  std::string config_path, out_dir, scenario_name;
  double tolerance_scale = 0.0;
  bool list = false;
  app.add_option("-c,--config", config_path, "Scenario configuration JSON file");
  app.add_option("-o,--out", out_dir, "Output directory for report.json and data files");
  app.add_option("-s,--scenario", scenario_name, "Scenario name (overrides the config file)");
  app.add_option("--tolerance-scale", tolerance_scale,
                 "Multiply every check tolerance by this factor");
  app.add_flag("-l,--list", list, "List scenario names and exit");

  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& name : qmflow::scenario::scenario_names()) std::printf("%s\n", name.c_str());
    return 0;
  }

  qmflow::scenario::Report report;
  try {
    nlohmann::json raw;
    try {
      raw = nlohmann::json::parse(load_config_text(config_path));
    } catch (const nlohmann::json::exception& e) {
      throw qmflow::ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    if (!raw.is_object()) throw qmflow::ConfigError("config: top level must be an object");
    if (!scenario_name.empty()) raw["scenario"] = scenario_name;
    if (tolerance_scale != 0.0) raw["tolerance_scale"] = tolerance_scale;
    if (!out_dir.empty()) raw["out_dir"] = out_dir;

    const auto cfg = qmflow::scenario::ScenarioConfig::from_json_text(raw.dump());
    report = qmflow::scenario::run_scenario(cfg);
    qmflow::scenario::emit_report(report, cfg.out_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  for (const auto& ch : report.checks) {
    std::printf("[%s] %-34s %13.6e %s %13.6e  (%s)%s%s\n", ch.pass ? "PASS" : "FAIL",
                ch.name.c_str(), ch.computed,
                ch.comparator == "upper"   ? "<="
                : ch.comparator == "lower" ? ">="
                                           : "~",
                ch.comparator == "upper" || ch.comparator == "lower" ? ch.tolerance
                                                                     : ch.expected,
                ch.anchor.c_str(), ch.error.empty() ? "" : "  error: ",
                ch.error.c_str());
  }
  std::printf("%s: %d/%d checks passed (%.0f ms)\n", report.scenario.c_str(), report.passed,
              report.total, report.runtime_ms);
  return report.pass ? 0 : 1;
}
