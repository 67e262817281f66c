#pragma once

#include "rydnm/scenario.hpp"

#include <string>
#include <vector>

namespace rydnm {

/// One swept axis. Values are uniform from min to max inclusive, in the
/// same units as the corresponding config key (um or MHz/2pi).
struct SweepParameter {
  std::string name;  // R, RD1, RD2, omega_p, omega_c, delta_p, delta_c,
                     // gamma_p, J, U1, U2
  double min = 0.0;
  double max = 0.0;
  int steps = 0;
};

struct SweepSpec {
  ScenarioConfig base;
  std::vector<SweepParameter> parameters;  // one or two
};

struct SweepCell {
  long index = 0;
  std::vector<double> values;
  bool ok = false;
  std::string error;
  double n = 0.0;
  double half_life_us = 0.0;
  double steady_pop1 = 0.0;
};

SweepSpec sweep_from_json(const nlohmann::json& doc);
SweepSpec parse_sweep_spec(const std::string& json_text);

/// Resolve one cell's config: swept values applied to the base. Sweeping a
/// coupling (J, U1, U2) over a geometry-mode base first materializes the
/// derived couplings into direct mode; sweeping a distance requires
/// geometry mode.
ScenarioConfig apply_sweep_values(const SweepSpec& spec,
                                  const std::vector<double>& values);

/// Earliest sample time after which |pop1 - pop1_final| stays within half of
/// the initial offset |pop1(0) - pop1_final|.
double envelope_half_life(const std::vector<double>& times,
                          const std::vector<double>& pop1);

/// Run all cells (row-major over the axes) on a work pool; per-cell failures
/// are recorded in the cell, never dropped. Results are ordered by index.
std::vector<SweepCell> run_sweep(const SweepSpec& spec, int threads = 0);

std::string sweep_csv(const SweepSpec& spec,
                      const std::vector<SweepCell>& cells);

}  // namespace rydnm
