#pragma once

#include "rydnm/measures.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace rydnm {

/// Configuration error with the offending key path (e.g. "geometry.R_um").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key_path, const std::string& message)
      : std::runtime_error(key_path.empty() ? message
                                            : key_path + ": " + message),
        key_path_(std::move(key_path)) {}
  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

struct OutputOptions {
  std::string out_dir = ".";
  bool write_trajectory = true;
  bool write_summary = true;
};

/// Full scenario description: physics, integration window, output controls.
/// All frequencies in config documents are value/2pi in MHz (keys carry the
/// _MHz_over_2pi suffix); distances are um, times us.
struct ScenarioConfig {
  std::string label = "scenario";
  PhysicalScenario physics;
  IntegratorConfig integrator;
  OutputOptions output;
};

enum class PresetId { fig2a, fig2b, fig2c, fig3, fig4 };

/// Paper-figure presets with geometry-mode couplings and resolved windows.
ScenarioConfig preset(PresetId id);
const char* preset_name(PresetId id);
PresetId preset_from_name(const std::string& name);
std::vector<PresetId> all_preset_ids();

ScenarioConfig config_from_json(const nlohmann::json& doc);
ScenarioConfig parse_config(const std::string& json_text);
/// Normalized form: presets resolved, every default materialized.
nlohmann::json config_to_json(const ScenarioConfig& cfg);

struct ScenarioSummary {
  NMResult nm;
  std::vector<Revival> revivals;  // on pop1 of the rho1 trajectory
  double final_pop1_rho1 = 0.0;
  double final_pop2_rho1 = 0.0;
  double final_pop_e_rho1 = 0.0;
  double final_pop_r_rho1 = 0.0;
  double final_pop1_rho2 = 0.0;
  double final_pop2_rho2 = 0.0;
  double max_trace_defect = 0.0;
  double max_hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;
  double pop_conservation_drift = 0.0;
  double d_full_max_increase = 0.0;
};

struct ScenarioResult {
  ScenarioConfig config;
  Trajectory traj1;
  Trajectory traj2;
  DistanceSeries distances;
  ScenarioSummary summary;
};

/// Propagate the orthogonal initial pair (|1g>, |2g| projectors) under the
/// scenario and evaluate all
/// measures; no files are touched.
ScenarioResult run_scenario_in_memory(const ScenarioConfig& cfg);

/// run_scenario_in_memory plus artifacts: <out_dir>/<label>_trajectory.csv
/// and <out_dir>/<label>_summary.json per cfg.output.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

nlohmann::json summary_to_json(const ScenarioSummary& summary);
std::string trajectory_csv(const ScenarioResult& result);

}  // namespace rydnm
