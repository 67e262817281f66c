#pragma once

#include "rydnm/linalg.hpp"
#include "rydnm/model.hpp"

#include <stdexcept>
#include <vector>

namespace rydnm {

/// Fixed-step RK4 settings. The stability guard requires
/// dt * omega_max <= 0.05 with omega_max = max(|H| entries, Gamma_p);
/// violations reject by default and only warn when enforce_step_limit is off.
struct IntegratorConfig {
  double dt_us = 1e-4;
  int output_stride = 10;
  double t_max_us = 3.0;
  ToleranceProfile tolerances;
  bool enforce_step_limit = true;
};

inline constexpr double kStepStabilityLimit = 0.05;

/// Thrown when a recorded state violates the validity tolerances or the
/// step-size guard rejects the configuration.
class IntegratorAbort : public std::runtime_error {
 public:
  IntegratorAbort(const std::string& what, double t_us)
      : std::runtime_error(what), t_us_(t_us) {}
  double t_us() const { return t_us_; }

 private:
  double t_us_;
};

/// Sampled time evolution of the full state plus derived observables.
/// Samples are uniform with spacing dt * output_stride, sample 0 at t = 0.
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> full_states;     // dim 6
  std::vector<DensityMatrix> reduced_states;  // dim 2
  std::vector<double> pop1;
  std::vector<double> pop2;
  std::vector<double> pop_e;
  std::vector<double> pop_r;
  std::vector<double> trace_defect;

  std::size_t size() const { return times.size(); }
};

/// Detector-only (3x3) run: states plus level populations.
struct DetectorTrajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<double> pop_g;
  std::vector<double> pop_e;
  std::vector<double> pop_r;
};

/// drho/dt = -i[H,rho] - 1/2 (rho K'K + K'K rho - 2 K rho K').
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& h,
                           const ComplexMatrix& k);

/// Propagate the full 6x6 state; every recorded sample is validated against
/// cfg.tolerances and the first violation aborts with its time.
Trajectory propagate(const DensityMatrix& rho0, const EffectiveModel& model,
                     const IntegratorConfig& cfg);

/// Detector-only master equation with an optional static shift (rad/us) of
/// the |r> level, emulating a frozen dimer state.
DetectorTrajectory detector_only_propagate(const DensityMatrix& rho0,
                                           const LaserParams& lasers,
                                           double r_shift_angular,
                                           const IntegratorConfig& cfg);

}  // namespace rydnm
