#pragma once

#include "rydnm/dynamics.hpp"

#include <utility>
#include <vector>

namespace rydnm {

/// Trace-distance series of a trajectory pair on a shared uniform grid.
struct DistanceSeries {
  std::vector<double> times;
  std::vector<double> d_s;      // reduced (dimer) trace distance
  std::vector<double> d_full;   // full-space trace distance
  std::vector<double> sigma_s;  // dD_S/dt, central differences (1/us)

  double grid_spacing() const {
    return times.size() > 1 ? times[1] - times[0] : 0.0;
  }
};

/// Accumulated trace-distance backflow and where it happened.
struct NMResult {
  double n = 0.0;
  std::vector<std::pair<double, double>> positive_intervals;  // us
  double grid_spacing = 0.0;
};

struct Revival {
  double t_us = 0.0;
  double value = 0.0;
  double prominence = 0.0;
};

/// Default per-us increment threshold filtering integrator round-off.
inline constexpr double kNMIncrementEpsilon = 1e-8;

/// Default revival prominence threshold.
inline constexpr double kRevivalProminence = 1e-3;

DistanceSeries distance_series(const Trajectory& traj_a,
                               const Trajectory& traj_b);

/// Sum of positive grid increments of D_S, counting only increments larger
/// than epsilon * grid_spacing; maximal runs of qualifying increments are
/// reported as intervals.
NMResult non_markovianity(const DistanceSeries& ds,
                          double epsilon = kNMIncrementEpsilon);

/// Envelope revivals of a sampled signal on a uniform grid.
///
/// The series is smoothed with a 3-sample moving average and its strict
/// interior maxima are taken as oscillation peaks. A peak counts as a
/// revival only if the envelope recovers: it must exceed the preceding
/// peak, or, for the first peak, come back up to the running maximum within
/// the prominence threshold. The reported prominence is the rise from the
/// preceding trough; rises below the threshold are discarded. Monotonically
/// damped oscillations therefore yield no revivals.
std::vector<Revival> detect_revivals(const std::vector<double>& times,
                                     const std::vector<double>& values,
                                     double prominence = kRevivalProminence);

}  // namespace rydnm
