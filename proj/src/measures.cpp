#include "rydnm/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rydnm {

DistanceSeries distance_series(const Trajectory& traj_a,
                               const Trajectory& traj_b) {
  const std::size_t n = traj_a.size();
  if (n != traj_b.size() || n == 0) {
    throw std::invalid_argument("distance_series: trajectories must share a "
                                "non-empty time grid");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(traj_a.times[i] - traj_b.times[i]) > 1e-12) {
      throw std::invalid_argument("distance_series: time grids differ");
    }
  }
  DistanceSeries ds;
  ds.times = traj_a.times;
  ds.d_s.resize(n);
  ds.d_full.resize(n);
  ds.sigma_s.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    ds.d_s[i] =
        trace_distance_two_level(traj_a.reduced_states[i], traj_b.reduced_states[i]);
    ds.d_full[i] = trace_distance(traj_a.full_states[i], traj_b.full_states[i]);
  }
  if (n >= 2) {
    const double h = ds.grid_spacing();
    ds.sigma_s[0] = (ds.d_s[1] - ds.d_s[0]) / h;
    ds.sigma_s[n - 1] = (ds.d_s[n - 1] - ds.d_s[n - 2]) / h;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      ds.sigma_s[i] = (ds.d_s[i + 1] - ds.d_s[i - 1]) / (2.0 * h);
    }
  }
  return ds;
}

NMResult non_markovianity(const DistanceSeries& ds, double epsilon) {
  NMResult result;
  result.grid_spacing = ds.grid_spacing();
  const double threshold = epsilon * result.grid_spacing;
  bool in_run = false;
  double run_start = 0.0;
  for (std::size_t i = 0; i + 1 < ds.d_s.size(); ++i) {
    const double increment = ds.d_s[i + 1] - ds.d_s[i];
    if (increment > threshold) {
      result.n += increment;
      if (!in_run) {
        in_run = true;
        run_start = ds.times[i];
      }
    } else if (in_run) {
      result.positive_intervals.emplace_back(run_start, ds.times[i]);
      in_run = false;
    }
  }
  if (in_run) {
    result.positive_intervals.emplace_back(run_start, ds.times.back());
  }
  return result;
}

std::vector<Revival> detect_revivals(const std::vector<double>& times,
                                     const std::vector<double>& values,
                                     double prominence) {
  const std::size_t n = values.size();
  if (times.size() != n) {
    throw std::invalid_argument("detect_revivals: times/values size mismatch");
  }
  std::vector<Revival> revivals;
  if (n < 3) return revivals;

  std::vector<double> smooth(n);
  smooth[0] = 0.5 * (values[0] + values[1]);
  smooth[n - 1] = 0.5 * (values[n - 2] + values[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    smooth[i] = (values[i - 1] + values[i] + values[i + 1]) / 3.0;
  }

  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (smooth[i] > smooth[i - 1] && smooth[i] > smooth[i + 1]) {
      peaks.push_back(i);
    }
  }

  double running_max = smooth[0];
  std::size_t prev_peak = 0;
  bool have_prev_peak = false;
  std::size_t scan = 0;
  for (const std::size_t p : peaks) {
    for (; scan < p; ++scan) running_max = std::max(running_max, smooth[scan]);
    const std::size_t base = have_prev_peak ? prev_peak : 0;
    double trough = smooth[p];
    for (std::size_t i = base; i < p; ++i) trough = std::min(trough, smooth[i]);
    const double rise = smooth[p] - trough;
    const bool recovers = have_prev_peak
                              ? smooth[p] > smooth[prev_peak]
                              : smooth[p] >= running_max - prominence;
    if (recovers && rise > prominence) {
      revivals.push_back({times[p], smooth[p], rise});
    }
    prev_peak = p;
    have_prev_peak = true;
  }
  return revivals;
}

}  // namespace rydnm
