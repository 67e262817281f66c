#include "rydnm/scenario.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>

namespace rydnm {

namespace {

using nlohmann::json;

std::string join_path(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void require_object(const json& node, const std::string& path) {
  if (!node.is_object()) throw ConfigError(path, "expected an object");
}

void reject_unknown_keys(const json& node, const std::string& path,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : node.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) throw ConfigError(join_path(path, item.key()), "unknown key");
  }
}

double read_number(const json& node, const std::string& path,
                   const char* key, double fallback) {
  if (!node.contains(key)) return fallback;
  const json& value = node.at(key);
  if (!value.is_number()) {
    throw ConfigError(join_path(path, key), "expected a number");
  }
  return value.get<double>();
}

bool read_bool(const json& node, const std::string& path, const char* key,
               bool fallback) {
  if (!node.contains(key)) return fallback;
  const json& value = node.at(key);
  if (!value.is_boolean()) {
    throw ConfigError(join_path(path, key), "expected a boolean");
  }
  return value.get<bool>();
}

std::string read_string(const json& node, const std::string& path,
                        const char* key, const std::string& fallback) {
  if (!node.contains(key)) return fallback;
  const json& value = node.at(key);
  if (!value.is_string()) {
    throw ConfigError(join_path(path, key), "expected a string");
  }
  return value.get<std::string>();
}

void apply_geometry(const json& node, ScenarioConfig& cfg) {
  require_object(node, "geometry");
  reject_unknown_keys(node, "geometry", {"R_um", "RD1_um", "RD2_um"});
  Geometry geom = cfg.physics.geometry.value_or(Geometry{});
  const bool had_geometry = cfg.physics.geometry.has_value();
  geom.r_um = read_number(node, "geometry", "R_um",
                          had_geometry ? geom.r_um : 0.0);
  geom.rd1_um = read_number(node, "geometry", "RD1_um",
                            had_geometry ? geom.rd1_um : 0.0);
  geom.rd2_um = read_number(node, "geometry", "RD2_um",
                            had_geometry ? geom.rd2_um : 0.0);
  if (geom.r_um <= 0.0) throw ConfigError("geometry.R_um", "must be > 0");
  if (geom.rd1_um <= 0.0) throw ConfigError("geometry.RD1_um", "must be > 0");
  if (geom.rd2_um <= 0.0) throw ConfigError("geometry.RD2_um", "must be > 0");
  cfg.physics.geometry = geom;
  cfg.physics.j_mhz.reset();
  cfg.physics.u1_mhz.reset();
  cfg.physics.u2_mhz.reset();
}

void apply_couplings(const json& node, ScenarioConfig& cfg) {
  require_object(node, "couplings");
  reject_unknown_keys(node, "couplings",
                      {"J_MHz_over_2pi", "U1_MHz_over_2pi", "U2_MHz_over_2pi"});
  cfg.physics.j_mhz =
      read_number(node, "couplings", "J_MHz_over_2pi",
                  cfg.physics.j_mhz.value_or(0.0));
  cfg.physics.u1_mhz =
      read_number(node, "couplings", "U1_MHz_over_2pi",
                  cfg.physics.u1_mhz.value_or(0.0));
  cfg.physics.u2_mhz =
      read_number(node, "couplings", "U2_MHz_over_2pi",
                  cfg.physics.u2_mhz.value_or(0.0));
  cfg.physics.geometry.reset();
}

void apply_coefficients(const json& node, ScenarioConfig& cfg) {
  require_object(node, "coefficients");
  reject_unknown_keys(node, "coefficients",
                      {"C3_MHz_um3_over_2pi", "C4rp_MHz_um4_over_2pi",
                       "C6rs_MHz_um6_over_2pi"});
  auto& coeff = cfg.physics.coefficients;
  coeff.c3_mhz_um3 = read_number(node, "coefficients", "C3_MHz_um3_over_2pi",
                                 coeff.c3_mhz_um3);
  coeff.c4rp_mhz_um4 = read_number(node, "coefficients",
                                   "C4rp_MHz_um4_over_2pi", coeff.c4rp_mhz_um4);
  coeff.c6rs_mhz_um6 = read_number(node, "coefficients",
                                   "C6rs_MHz_um6_over_2pi", coeff.c6rs_mhz_um6);
}

void apply_lasers(const json& node, ScenarioConfig& cfg) {
  require_object(node, "lasers");
  reject_unknown_keys(node, "lasers",
                      {"omega_p_MHz_over_2pi", "omega_c_MHz_over_2pi",
                       "delta_p_MHz_over_2pi", "delta_c_MHz_over_2pi",
                       "gamma_p_MHz_over_2pi"});
  auto& lasers = cfg.physics.lasers;
  lasers.omega_p_mhz = read_number(node, "lasers", "omega_p_MHz_over_2pi",
                                   lasers.omega_p_mhz);
  lasers.omega_c_mhz = read_number(node, "lasers", "omega_c_MHz_over_2pi",
                                   lasers.omega_c_mhz);
  lasers.delta_p_mhz = read_number(node, "lasers", "delta_p_MHz_over_2pi",
                                   lasers.delta_p_mhz);
  lasers.delta_c_mhz = read_number(node, "lasers", "delta_c_MHz_over_2pi",
                                   lasers.delta_c_mhz);
  lasers.gamma_p_mhz = read_number(node, "lasers", "gamma_p_MHz_over_2pi",
                                   lasers.gamma_p_mhz);
  if (lasers.omega_p_mhz < 0.0)
    throw ConfigError("lasers.omega_p_MHz_over_2pi", "must be >= 0");
  if (lasers.omega_c_mhz < 0.0)
    throw ConfigError("lasers.omega_c_MHz_over_2pi", "must be >= 0");
  if (lasers.gamma_p_mhz < 0.0)
    throw ConfigError("lasers.gamma_p_MHz_over_2pi", "must be >= 0");
}

void apply_integrator(const json& node, ScenarioConfig& cfg) {
  require_object(node, "integrator");
  reject_unknown_keys(node, "integrator",
                      {"dt_us", "output_stride", "t_max_us",
                       "enforce_step_limit"});
  auto& integ = cfg.integrator;
  integ.dt_us = read_number(node, "integrator", "dt_us", integ.dt_us);
  integ.t_max_us = read_number(node, "integrator", "t_max_us", integ.t_max_us);
  integ.enforce_step_limit = read_bool(node, "integrator",
                                       "enforce_step_limit",
                                       integ.enforce_step_limit);
  if (node.contains("output_stride")) {
    const json& value = node.at("output_stride");
    if (!value.is_number_integer()) {
      throw ConfigError("integrator.output_stride", "expected an integer");
    }
    integ.output_stride = value.get<int>();
  }
  if (integ.dt_us <= 0.0) throw ConfigError("integrator.dt_us", "must be > 0");
  if (integ.t_max_us < integ.dt_us)
    throw ConfigError("integrator.t_max_us", "must be >= dt_us");
  if (integ.output_stride < 1)
    throw ConfigError("integrator.output_stride", "must be >= 1");
}

void apply_output(const json& node, ScenarioConfig& cfg) {
  require_object(node, "output");
  reject_unknown_keys(node, "output",
                      {"out_dir", "write_trajectory", "write_summary"});
  cfg.output.out_dir = read_string(node, "output", "out_dir",
                                   cfg.output.out_dir);
  cfg.output.write_trajectory = read_bool(node, "output", "write_trajectory",
                                          cfg.output.write_trajectory);
  cfg.output.write_summary = read_bool(node, "output", "write_summary",
                                       cfg.output.write_summary);
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

}  // namespace

const char* preset_name(PresetId id) {
  switch (id) {
    case PresetId::fig2a: return "fig2a";
    case PresetId::fig2b: return "fig2b";
    case PresetId::fig2c: return "fig2c";
    case PresetId::fig3: return "fig3";
    case PresetId::fig4: return "fig4";
  }
  return "?";
}

PresetId preset_from_name(const std::string& name) {
  for (PresetId id : all_preset_ids()) {
    if (name == preset_name(id)) return id;
  }
  throw ConfigError("preset", "unknown preset '" + name +
                                  "' (expected fig2a, fig2b, fig2c, fig3 or "
                                  "fig4)");
}

std::vector<PresetId> all_preset_ids() {
  return {PresetId::fig2a, PresetId::fig2b, PresetId::fig2c, PresetId::fig3,
          PresetId::fig4};
}

ScenarioConfig preset(PresetId id) {
  ScenarioConfig cfg;
  cfg.label = preset_name(id);
  switch (id) {
    case PresetId::fig2a:
    case PresetId::fig2b:
    case PresetId::fig2c: {
      cfg.physics.geometry = Geometry{18.0, 2.5, 15.5};
      const double omega_p = id == PresetId::fig2a   ? 1.2
                             : id == PresetId::fig2b ? 6.0
                                                     : 20.0;
      cfg.physics.lasers = LaserParams{omega_p, 20.0, 0.0, 0.0, 6.1};
      cfg.integrator.t_max_us = 3.0;
      break;
    }
    case PresetId::fig3:
      cfg.physics.geometry = Geometry{8.0, 2.3, 8.3};
      cfg.physics.lasers = LaserParams{30.0, 30.0, -50.0, 50.0, 6.1};
      cfg.integrator.t_max_us = 5.0;
      break;
    case PresetId::fig4:
      // The slow detector equilibration keeps D_S oscillating for tens of
      // microseconds; the window must cover the tail for the backflow
      // integral to converge.
      cfg.physics.geometry = Geometry{9.5, 4.0, 10.3};
      cfg.physics.lasers = LaserParams{30.0, 30.0, -20.0, 20.0, 6.1};
      cfg.integrator.t_max_us = 40.0;
      break;
  }
  return cfg;
}

ScenarioConfig config_from_json(const json& doc) {
  require_object(doc, "");
  reject_unknown_keys(doc, "",
                      {"preset", "label", "geometry", "coefficients",
                       "couplings", "lasers", "integrator", "output"});
  ScenarioConfig cfg;
  if (doc.contains("preset")) {
    cfg = preset(preset_from_name(read_string(doc, "", "preset", "")));
  }
  if (doc.contains("geometry") && doc.contains("couplings")) {
    throw ConfigError("couplings",
                      "geometry and couplings are mutually exclusive");
  }
  if (doc.contains("geometry")) apply_geometry(doc.at("geometry"), cfg);
  if (doc.contains("couplings")) apply_couplings(doc.at("couplings"), cfg);
  if (doc.contains("coefficients")) apply_coefficients(doc.at("coefficients"), cfg);
  if (doc.contains("lasers")) apply_lasers(doc.at("lasers"), cfg);
  if (doc.contains("integrator")) apply_integrator(doc.at("integrator"), cfg);
  if (doc.contains("output")) apply_output(doc.at("output"), cfg);
  cfg.label = read_string(doc, "", "label", cfg.label);

  const bool direct_mode = cfg.physics.j_mhz.has_value() ||
                           cfg.physics.u1_mhz.has_value() ||
                           cfg.physics.u2_mhz.has_value();
  if (!cfg.physics.geometry.has_value() && !direct_mode) {
    throw ConfigError("geometry",
                      "one of geometry or couplings must be provided");
  }
  return cfg;
}

ScenarioConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError("", std::string("invalid JSON: ") + err.what());
  }
  return config_from_json(doc);
}

json config_to_json(const ScenarioConfig& cfg) {
  json doc;
  doc["label"] = cfg.label;
  if (cfg.physics.geometry) {
    doc["geometry"] = {{"R_um", cfg.physics.geometry->r_um},
                       {"RD1_um", cfg.physics.geometry->rd1_um},
                       {"RD2_um", cfg.physics.geometry->rd2_um}};
  } else {
    doc["couplings"] = {{"J_MHz_over_2pi", cfg.physics.j_mhz.value_or(0.0)},
                        {"U1_MHz_over_2pi", cfg.physics.u1_mhz.value_or(0.0)},
                        {"U2_MHz_over_2pi", cfg.physics.u2_mhz.value_or(0.0)}};
  }
  doc["coefficients"] = {
      {"C3_MHz_um3_over_2pi", cfg.physics.coefficients.c3_mhz_um3},
      {"C4rp_MHz_um4_over_2pi", cfg.physics.coefficients.c4rp_mhz_um4},
      {"C6rs_MHz_um6_over_2pi", cfg.physics.coefficients.c6rs_mhz_um6}};
  doc["lasers"] = {{"omega_p_MHz_over_2pi", cfg.physics.lasers.omega_p_mhz},
                   {"omega_c_MHz_over_2pi", cfg.physics.lasers.omega_c_mhz},
                   {"delta_p_MHz_over_2pi", cfg.physics.lasers.delta_p_mhz},
                   {"delta_c_MHz_over_2pi", cfg.physics.lasers.delta_c_mhz},
                   {"gamma_p_MHz_over_2pi", cfg.physics.lasers.gamma_p_mhz}};
  doc["integrator"] = {{"dt_us", cfg.integrator.dt_us},
                       {"output_stride", cfg.integrator.output_stride},
                       {"t_max_us", cfg.integrator.t_max_us},
                       {"enforce_step_limit", cfg.integrator.enforce_step_limit}};
  doc["output"] = {{"out_dir", cfg.output.out_dir},
                   {"write_trajectory", cfg.output.write_trajectory},
                   {"write_summary", cfg.output.write_summary}};
  return doc;
}

ScenarioResult run_scenario_in_memory(const ScenarioConfig& cfg) {
  const EffectiveModel model = build_full_model(cfg.physics);
  ScenarioResult result;
  result.config = cfg;
  result.traj1 = propagate(initial_state(InitialState::state1), model,
                           cfg.integrator);
  result.traj2 = propagate(initial_state(InitialState::state2), model,
                           cfg.integrator);
  result.distances = distance_series(result.traj1, result.traj2);

  ScenarioSummary& s = result.summary;
  s.nm = non_markovianity(result.distances);
  s.revivals = detect_revivals(result.traj1.times, result.traj1.pop1);
  s.final_pop1_rho1 = result.traj1.pop1.back();
  s.final_pop2_rho1 = result.traj1.pop2.back();
  s.final_pop_e_rho1 = result.traj1.pop_e.back();
  s.final_pop_r_rho1 = result.traj1.pop_r.back();
  s.final_pop1_rho2 = result.traj2.pop1.back();
  s.final_pop2_rho2 = result.traj2.pop2.back();

  s.min_eigenvalue = 1.0;
  for (const Trajectory* traj : {&result.traj1, &result.traj2}) {
    const double pop_sum0 = traj->pop1.front() + traj->pop2.front();
    for (std::size_t i = 0; i < traj->size(); ++i) {
      const ValidityReport report =
          validate_density_matrix(traj->full_states[i], cfg.integrator.tolerances);
      s.max_trace_defect = std::max(s.max_trace_defect, report.trace_defect);
      s.max_hermiticity_defect =
          std::max(s.max_hermiticity_defect, report.hermiticity_defect);
      s.min_eigenvalue = std::min(s.min_eigenvalue, report.min_eigenvalue);
      s.pop_conservation_drift =
          std::max(s.pop_conservation_drift,
                   std::abs(traj->pop1[i] + traj->pop2[i] - pop_sum0));
    }
  }
  for (std::size_t i = 0; i + 1 < result.distances.d_full.size(); ++i) {
    s.d_full_max_increase =
        std::max(s.d_full_max_increase,
                 result.distances.d_full[i + 1] - result.distances.d_full[i]);
  }
  return result;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  ScenarioResult result = run_scenario_in_memory(cfg);
  namespace fs = std::filesystem;
  const fs::path out_dir(cfg.output.out_dir);
  if (cfg.output.write_trajectory || cfg.output.write_summary) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec && !fs::is_directory(out_dir)) {
      throw std::runtime_error("run_scenario: cannot create output directory " +
                               out_dir.string());
    }
  }
  if (cfg.output.write_trajectory) {
    std::ofstream file(out_dir / (cfg.label + "_trajectory.csv"),
                       std::ios::binary);
    file << trajectory_csv(result);
    if (!file) {
      throw std::runtime_error("run_scenario: failed to write trajectory CSV");
    }
  }
  if (cfg.output.write_summary) {
    std::ofstream file(out_dir / (cfg.label + "_summary.json"),
                       std::ios::binary);
    file << summary_to_json(result.summary).dump(2) << '\n';
    if (!file) {
      throw std::runtime_error("run_scenario: failed to write summary JSON");
    }
  }
  return result;
}

json summary_to_json(const ScenarioSummary& summary) {
  json intervals = json::array();
  for (const auto& [start, end] : summary.nm.positive_intervals) {
    intervals.push_back({start, end});
  }
  json revivals = json::array();
  for (const Revival& r : summary.revivals) {
    revivals.push_back({{"t_us", r.t_us},
                        {"value", r.value},
                        {"prominence", r.prominence}});
  }
  return json{
      {"N", summary.nm.n},
      {"positive_intervals", intervals},
      {"revivals", revivals},
      {"final_pops",
       {{"pop1_rho1", summary.final_pop1_rho1},
        {"pop2_rho1", summary.final_pop2_rho1},
        {"pop_e_rho1", summary.final_pop_e_rho1},
        {"pop_r_rho1", summary.final_pop_r_rho1},
        {"pop1_rho2", summary.final_pop1_rho2},
        {"pop2_rho2", summary.final_pop2_rho2}}},
      {"diagnostics",
       {{"max_trace_defect", summary.max_trace_defect},
        {"max_hermiticity_defect", summary.max_hermiticity_defect},
        {"min_eigenvalue", summary.min_eigenvalue},
        {"pop_conservation_drift", summary.pop_conservation_drift},
        {"d_full_max_increase", summary.d_full_max_increase},
        {"grid_spacing_us", summary.nm.grid_spacing}}}};
}

std::string trajectory_csv(const ScenarioResult& result) {
  std::string out =
      "t_us,pop1_rho1,pop2_rho1,pop_e_rho1,pop_r_rho1,pop1_rho2,D_S,"
      "sigma_S_per_us,D_full,trace_defect\n";
  const std::size_t n = result.traj1.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::array<double, 10> row = {
        result.traj1.times[i],        result.traj1.pop1[i],
        result.traj1.pop2[i],         result.traj1.pop_e[i],
        result.traj1.pop_r[i],        result.traj2.pop1[i],
        result.distances.d_s[i],      result.distances.sigma_s[i],
        result.distances.d_full[i],
        std::max(result.traj1.trace_defect[i], result.traj2.trace_defect[i])};
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace rydnm
