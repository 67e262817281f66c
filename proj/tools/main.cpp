#include "rydnm/scenario.hpp"
#include "rydnm/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitIntegratorAbort = 2;

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw rydnm::ConfigError("", "cannot open file: " + path);
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

struct CommonOverrides {
  std::optional<std::string> out_dir;
  std::optional<double> dt_us;
  std::optional<double> t_max_us;
  std::optional<int> stride;

  void apply(rydnm::ScenarioConfig& cfg) const {
    if (out_dir) cfg.output.out_dir = *out_dir;
    if (dt_us) cfg.integrator.dt_us = *dt_us;
    if (t_max_us) cfg.integrator.t_max_us = *t_max_us;
    if (stride) cfg.integrator.output_stride = *stride;
    if (cfg.integrator.dt_us <= 0.0) {
      throw rydnm::ConfigError("integrator.dt_us", "must be > 0");
    }
    if (cfg.integrator.t_max_us < cfg.integrator.dt_us) {
      throw rydnm::ConfigError("integrator.t_max_us", "must be >= dt_us");
    }
    if (cfg.integrator.output_stride < 1) {
      throw rydnm::ConfigError("integrator.output_stride", "must be >= 1");
    }
  }
};

void add_common_flags(CLI::App* cmd, CommonOverrides& overrides) {
  cmd->add_option("--out-dir", overrides.out_dir, "Artifact directory");
  cmd->add_option("--dt-us", overrides.dt_us, "Inner integrator step (us)");
  cmd->add_option("--t-max-us", overrides.t_max_us, "Simulation window (us)");
  cmd->add_option("--stride", overrides.stride, "Output every N inner steps");
}

void print_run_summary(const rydnm::ScenarioResult& result) {
  const rydnm::ScenarioSummary& s = result.summary;
  std::printf("scenario %s: %zu samples, grid %.4g us\n",
              result.config.label.c_str(), result.traj1.size(),
              s.nm.grid_spacing);
  std::printf("  N = %.6g  (positive intervals: %zu)\n", s.nm.n,
              s.nm.positive_intervals.size());
  std::printf("  final pop1 = %.6g, D_S(end) = %.6g\n", s.final_pop1_rho1,
              result.distances.d_s.back());
  for (const rydnm::Revival& r : s.revivals) {
    std::printf("  revival at t = %.4g us (pop1 = %.4g, prominence = %.3g)\n",
                r.t_us, r.value, r.prominence);
  }
  std::printf("  diagnostics: trace defect %.3g, hermiticity defect %.3g, "
              "min eigenvalue %.3g\n",
              s.max_trace_defect, s.max_hermiticity_defect, s.min_eigenvalue);
}

int run_command(const std::string& config_path, const std::string& preset_name,
                const CommonOverrides& overrides, const std::string& label) {
  rydnm::ScenarioConfig cfg;
  if (!config_path.empty() && !preset_name.empty()) {
    throw rydnm::ConfigError("", "give either a config file or --preset");
  }
  if (!config_path.empty()) {
    cfg = rydnm::parse_config(read_file(config_path));
  } else if (!preset_name.empty()) {
    cfg = rydnm::preset(rydnm::preset_from_name(preset_name));
  } else {
    throw rydnm::ConfigError("", "a config file or --preset is required");
  }
  overrides.apply(cfg);
  if (!label.empty()) cfg.label = label;
  const rydnm::ScenarioResult result = rydnm::run_scenario(cfg);
  print_run_summary(result);
  return kExitOk;
}

int sweep_command(const std::string& spec_path,
                  const CommonOverrides& overrides, int threads) {
  rydnm::SweepSpec spec = rydnm::parse_sweep_spec(read_file(spec_path));
  overrides.apply(spec.base);
  const std::vector<rydnm::SweepCell> cells = rydnm::run_sweep(spec, threads);

  namespace fs = std::filesystem;
  const fs::path out_dir(spec.base.output.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  const fs::path csv_path = out_dir / (spec.base.label + "_sweep.csv");
  std::ofstream file(csv_path, std::ios::binary);
  file << rydnm::sweep_csv(spec, cells);
  if (!file) {
    std::fprintf(stderr, "error: failed to write %s\n",
                 csv_path.string().c_str());
    return kExitConfigError;
  }
  long failures = 0;
  for (const rydnm::SweepCell& cell : cells) {
    if (!cell.ok) ++failures;
  }
  std::printf("sweep: %zu cells -> %s (%ld failed)\n", cells.size(),
              csv_path.string().c_str(), failures);
  return kExitOk;
}

int validate_command(const std::string& config_path) {
  const rydnm::ScenarioConfig cfg = rydnm::parse_config(read_file(config_path));
  std::cout << rydnm::config_to_json(cfg).dump(2) << '\n';
  return kExitOk;
}

int presets_command() {
  for (rydnm::PresetId id : rydnm::all_preset_ids()) {
    const rydnm::ScenarioConfig cfg = rydnm::preset(id);
    const rydnm::EffectiveCouplings c =
        rydnm::derive_couplings(*cfg.physics.geometry,
                                cfg.physics.coefficients);
    const rydnm::LaserParams& l = cfg.physics.lasers;
    std::printf(
        "%-6s R=%.4g RD1=%.4g RD2=%.4g um | J=%.4g U1=%.4g U2=%.4g MHz | "
        "Op=%.4g Oc=%.4g Dp=%.4g Dc=%.4g Gp=%.4g MHz | t_max=%.4g us\n",
        cfg.label.c_str(), cfg.physics.geometry->r_um,
        cfg.physics.geometry->rd1_um, cfg.physics.geometry->rd2_um, c.j_mhz(),
        c.u1_mhz(), c.u2_mhz(), l.omega_p_mhz, l.omega_c_mhz, l.delta_p_mhz,
        l.delta_c_mhz, l.gamma_p_mhz, cfg.integrator.t_max_us);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rydberg dimer + laser-driven detector: Lindblad dynamics and "
               "trace-distance non-Markovianity"};
  app.require_subcommand(1);

  std::string config_path, preset_name, label, spec_path, validate_path;
  CommonOverrides run_overrides, sweep_overrides;
  int threads = 0;

  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("config", config_path, "Scenario config JSON");
  run->add_option("--preset", preset_name,
                  "Preset id (fig2a, fig2b, fig2c, fig3, fig4)");
  run->add_option("--label", label, "Override the scenario label");
  add_common_flags(run, run_overrides);

  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("spec", spec_path, "Sweep spec JSON")->required();
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
  add_common_flags(sweep, sweep_overrides);

  CLI::App* validate = app.add_subcommand("validate",
                                          "Check a config and print the "
                                          "normalized form");
  validate->add_option("config", validate_path, "Scenario config JSON")
      ->required();

  CLI::App* presets = app.add_subcommand("presets",
                                         "List presets with resolved "
                                         "parameters");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(config_path, preset_name, run_overrides, label);
    }
    if (sweep->parsed()) {
      return sweep_command(spec_path, sweep_overrides, threads);
    }
    if (validate->parsed()) return validate_command(validate_path);
    if (presets->parsed()) return presets_command();
  } catch (const rydnm::ConfigError& err) {
    std::fprintf(stderr, "config error: %s\n", err.what());
    return kExitConfigError;
  } catch (const rydnm::IntegratorAbort& err) {
    std::fprintf(stderr, "integrator abort: %s\n", err.what());
    return kExitIntegratorAbort;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitConfigError;
  }
  return kExitOk;
}
