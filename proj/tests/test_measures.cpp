#include "rydnm/measures.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace rydnm;

namespace {

// Synthetic single-trajectory scaffolding for the distance plumbing.
Trajectory constant_trajectory(const DensityMatrix& full, int samples,
                               double spacing) {
  Trajectory traj;
  for (int i = 0; i < samples; ++i) {
    traj.times.push_back(i * spacing);
    traj.full_states.push_back(full);
    traj.reduced_states.push_back(partial_trace_detector(full));
    traj.pop1.push_back(0.0);
    traj.pop2.push_back(0.0);
    traj.pop_e.push_back(0.0);
    traj.pop_r.push_back(0.0);
    traj.trace_defect.push_back(0.0);
  }
  return traj;
}

DistanceSeries series_from(const std::vector<double>& d_s, double spacing) {
  DistanceSeries ds;
  for (std::size_t i = 0; i < d_s.size(); ++i) {
    ds.times.push_back(i * spacing);
    ds.d_s.push_back(d_s[i]);
    ds.d_full.push_back(1.0);
    ds.sigma_s.push_back(0.0);
  }
  return ds;
}

}  // namespace

TEST_CASE("distance_series: identical trajectories give zero everywhere") {
  const Trajectory traj =
      constant_trajectory(initial_state(InitialState::state1), 5, 0.1);
  const DistanceSeries ds = distance_series(traj, traj);
  for (std::size_t i = 0; i < ds.times.size(); ++i) {
    CHECK(ds.d_s[i] == 0.0);
    CHECK(ds.d_full[i] == 0.0);
    CHECK(ds.sigma_s[i] == 0.0);
  }
}

TEST_CASE("distance_series: the preset initial pair starts at distance one") {
  const Trajectory a =
      constant_trajectory(initial_state(InitialState::state1), 3, 0.1);
  const Trajectory b =
      constant_trajectory(initial_state(InitialState::state2), 3, 0.1);
  const DistanceSeries ds = distance_series(a, b);
  CHECK(ds.d_s[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ds.d_full[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ds.d_s[0] <= ds.d_full[0] + 1e-10);
}

TEST_CASE("distance_series: grid mismatch is rejected") {
  const Trajectory a =
      constant_trajectory(initial_state(InitialState::state1), 3, 0.1);
  Trajectory b = constant_trajectory(initial_state(InitialState::state2), 3, 0.1);
  b.times[2] += 1e-3;
  CHECK_THROWS_AS(distance_series(a, b), std::invalid_argument);
  const Trajectory c =
      constant_trajectory(initial_state(InitialState::state2), 4, 0.1);
  CHECK_THROWS_AS(distance_series(a, c), std::invalid_argument);
}

TEST_CASE("unitary orthogonal states keep distance one") {
  PhysicalScenario s;
  s.j_mhz = 3.16;
  s.lasers = LaserParams{0.0, 0.0, 0.0, 0.0, 0.0};
  const EffectiveModel model = build_full_model(s);
  IntegratorConfig cfg;
  cfg.t_max_us = 1.0;
  const Trajectory a = propagate(initial_state(InitialState::state1), model, cfg);
  const Trajectory b = propagate(initial_state(InitialState::state2), model, cfg);
  const DistanceSeries ds = distance_series(a, b);
  for (std::size_t i = 0; i < ds.times.size(); ++i) {
    CHECK(std::abs(ds.d_s[i] - 1.0) < 1e-9);
  }
  const NMResult nm = non_markovianity(ds);
  CHECK(nm.n < 1e-9);
}

TEST_CASE("non_markovianity: counts positive increments above threshold") {
  const DistanceSeries ds = series_from({1.0, 0.5, 0.7, 0.6, 0.9}, 0.1);
  const NMResult nm = non_markovianity(ds);
  CHECK(nm.n == doctest::Approx(0.5).epsilon(1e-14));
  REQUIRE(nm.positive_intervals.size() == 2);
  CHECK(nm.positive_intervals[0].first == doctest::Approx(0.1));
  CHECK(nm.positive_intervals[0].second == doctest::Approx(0.2));
  CHECK(nm.positive_intervals[1].first == doctest::Approx(0.3));
  CHECK(nm.positive_intervals[1].second == doctest::Approx(0.4));
  CHECK(nm.grid_spacing == doctest::Approx(0.1));
}

TEST_CASE("non_markovianity: decreasing series and threshold filtering") {
  const NMResult zero = non_markovianity(series_from({1.0, 0.8, 0.5, 0.2}, 0.1));
  CHECK(zero.n == 0.0);
  CHECK(zero.positive_intervals.empty());

  // Round-off-sized wiggles are filtered by the epsilon threshold.
  const DistanceSeries tiny = series_from({0.5, 0.5 + 1e-12, 0.5, 0.5 + 1e-12}, 0.1);
  CHECK(non_markovianity(tiny).n == 0.0);
  CHECK(non_markovianity(tiny, 0.0).n == doctest::Approx(2e-12));
}

TEST_CASE("increment decomposition telescopes") {
  const std::vector<double> values = {1.0, 0.4, 0.55, 0.3, 0.8, 0.75, 0.9};
  const DistanceSeries ds = series_from(values, 0.05);
  double positive = 0.0, negative = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double inc = values[i + 1] - values[i];
    if (inc > 0) positive += inc;
    else negative += -inc;
  }
  CHECK(non_markovianity(ds, 0.0).n == doctest::Approx(positive).epsilon(1e-14));
  CHECK(positive - negative ==
        doctest::Approx(values.back() - values.front()).epsilon(1e-12));
}

TEST_CASE("detect_revivals: cosine-squared and monotone series") {
  std::vector<double> t, full_revival;
  for (int i = 0; i <= 200; ++i) {
    t.push_back(2.0 * std::numbers::pi * i / 200.0);
    full_revival.push_back(std::pow(std::cos(t.back()), 2));
  }
  const std::vector<Revival> revs = detect_revivals(t, full_revival);
  REQUIRE(revs.size() == 1);
  CHECK(std::abs(revs[0].t_us - std::numbers::pi) < 0.1);
  CHECK(revs[0].value > 0.99);

  std::vector<double> decay;
  for (double x : t) decay.push_back(std::exp(-x));
  CHECK(detect_revivals(t, decay).empty());
  CHECK(detect_revivals({0.0, 1.0}, {1.0, 0.0}).empty());
}

TEST_CASE("detect_revivals: damped oscillation without envelope recovery") {
  // Monotonically decaying envelope: plain Rabi-style maxima are not
  // revivals even though each peak is locally prominent.
  std::vector<double> t, v;
  for (int i = 0; i <= 2000; ++i) {
    const double x = i * 0.005;
    t.push_back(x);
    v.push_back(0.5 + 0.5 * std::exp(-0.8 * x) * std::cos(10.0 * x));
  }
  CHECK(detect_revivals(t, v).empty());
}

TEST_CASE("detect_revivals: envelope recovery is detected with its rise") {
  std::vector<double> t, v;
  for (int i = 0; i <= 4000; ++i) {
    const double x = i * 0.0025;
    const double envelope =
        std::exp(-1.5 * x) + 0.35 * std::exp(-std::pow(x - 5.0, 2));
    t.push_back(x);
    v.push_back(0.5 + 0.5 * envelope * std::cos(12.0 * x));
  }
  const std::vector<Revival> revs = detect_revivals(t, v);
  REQUIRE(!revs.empty());
  bool near_bump_top = false;
  for (const Revival& r : revs) {
    CHECK(r.t_us > 3.0);  // envelope rise starts once the bump takes over
    CHECK(r.t_us < 6.0);
    CHECK(r.prominence > 1e-3);
    near_bump_top = near_bump_top || (r.t_us > 4.3 && r.t_us < 5.5);
  }
  CHECK(near_bump_top);
  // With a prominence bar above the bump size nothing survives.
  CHECK(detect_revivals(t, v, 0.9).empty());
}
