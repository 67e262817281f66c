#include "rydnm/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace rydnm {

namespace {

constexpr Complex kImag{0.0, 1.0};

template <typename Mat>
Mat rhs_fixed(const Mat& rho, const Mat& h, const Mat& k, const Mat& kdk) {
  const Mat h_rho = h * rho;
  const Mat rho_h = rho * h;
  const Mat sandwich = k * rho * k.adjoint();
  const Mat anti = kdk * rho + rho * kdk;
  return -kImag * (h_rho - rho_h) - 0.5 * (anti - 2.0 * sandwich);
}

template <typename Mat>
void rk4_step(Mat& rho, const Mat& h, const Mat& k, const Mat& kdk, double dt) {
  const Mat k1 = rhs_fixed(rho, h, k, kdk);
  const Mat k2 = rhs_fixed<Mat>(rho + (0.5 * dt) * k1, h, k, kdk);
  const Mat k3 = rhs_fixed<Mat>(rho + (0.5 * dt) * k2, h, k, kdk);
  const Mat k4 = rhs_fixed<Mat>(rho + dt * k3, h, k, kdk);
  rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

long step_count(const IntegratorConfig& cfg) {
  if (cfg.dt_us <= 0.0) {
    throw std::invalid_argument("IntegratorConfig: dt must be > 0");
  }
  if (cfg.t_max_us < cfg.dt_us) {
    throw std::invalid_argument("IntegratorConfig: t_max must be >= dt");
  }
  if (cfg.output_stride < 1) {
    throw std::invalid_argument("IntegratorConfig: output_stride must be >= 1");
  }
  return std::lround(cfg.t_max_us / cfg.dt_us);
}

void check_step_limit(double omega_max, const IntegratorConfig& cfg) {
  const double product = cfg.dt_us * omega_max;
  if (product <= kStepStabilityLimit) return;
  char msg[160];
  std::snprintf(msg, sizeof(msg),
                "step-size guard: dt * omega_max = %.3g exceeds %.3g",
                product, kStepStabilityLimit);
  if (cfg.enforce_step_limit) {
    throw IntegratorAbort(msg, 0.0);
  }
  std::fprintf(stderr, "warning: %s\n", msg);
}

void check_validity(const DensityMatrix& rho, const ToleranceProfile& tol,
                    double t_us) {
  const ValidityReport report = validate_density_matrix(rho, tol);
  if (report.ok()) return;
  char msg[240];
  std::snprintf(msg, sizeof(msg),
                "state validity violated at t = %.6g us (hermiticity defect "
                "%.3g, trace defect %.3g, min eigenvalue %.3g)",
                t_us, report.hermiticity_defect, report.trace_defect,
                report.min_eigenvalue);
  throw IntegratorAbort(msg, t_us);
}

}  // namespace

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& h,
                           const ComplexMatrix& k) {
  if (rho.rows() != rho.cols() || h.rows() != rho.rows() ||
      h.cols() != rho.cols() || k.rows() != rho.rows() ||
      k.cols() != rho.cols()) {
    throw std::invalid_argument("lindblad_rhs: shape mismatch");
  }
  const ComplexMatrix kdk = k.adjoint() * k;
  return rhs_fixed<ComplexMatrix>(rho, h, k, kdk);
}

Trajectory propagate(const DensityMatrix& rho0, const EffectiveModel& model,
                     const IntegratorConfig& cfg) {
  using Mat6 = Eigen::Matrix<Complex, 6, 6>;
  if (rho0.dim() != 6 || model.hamiltonian.rows() != 6 ||
      model.jump.rows() != 6) {
    throw std::invalid_argument("propagate: expected 6-dimensional operators");
  }
  const long n_steps = step_count(cfg);
  const double omega_max =
      std::max(model.hamiltonian.cwiseAbs().maxCoeff(),
               angular_from_mhz(model.lasers.gamma_p_mhz));
  check_step_limit(omega_max, cfg);

  const Mat6 h = model.hamiltonian;
  const Mat6 k = model.jump;
  const Mat6 kdk = k.adjoint() * k;
  Mat6 rho = rho0.matrix;

  const double sample_spacing = cfg.dt_us * cfg.output_stride;
  Trajectory traj;
  const long n_samples = n_steps / cfg.output_stride + 1;
  traj.times.reserve(n_samples);
  traj.full_states.reserve(n_samples);
  traj.reduced_states.reserve(n_samples);

  const auto record = [&](long sample_index, const Mat6& state) {
    const double t_us = sample_index * sample_spacing;
    DensityMatrix full(ComplexMatrix(state), rho0.label);
    check_validity(full, cfg.tolerances, t_us);
    DensityMatrix reduced = partial_trace_detector(full, model.layout);
    traj.times.push_back(t_us);
    traj.pop1.push_back(state(0, 0).real() + state(1, 1).real() +
                        state(2, 2).real());
    traj.pop2.push_back(state(3, 3).real() + state(4, 4).real() +
                        state(5, 5).real());
    traj.pop_e.push_back(state(1, 1).real() + state(4, 4).real());
    traj.pop_r.push_back(state(2, 2).real() + state(5, 5).real());
    traj.trace_defect.push_back(std::abs(state.trace() - Complex(1.0, 0.0)));
    traj.full_states.push_back(std::move(full));
    traj.reduced_states.push_back(std::move(reduced));
  };

  record(0, rho);
  for (long n = 1; n <= n_steps; ++n) {
    rk4_step(rho, h, k, kdk, cfg.dt_us);
    if (n % cfg.output_stride == 0) record(n / cfg.output_stride, rho);
  }
  return traj;
}

DetectorTrajectory detector_only_propagate(const DensityMatrix& rho0,
                                           const LaserParams& lasers,
                                           double r_shift_angular,
                                           const IntegratorConfig& cfg) {
  using Mat3 = Eigen::Matrix<Complex, 3, 3>;
  if (rho0.dim() != 3) {
    throw std::invalid_argument(
        "detector_only_propagate: expected a 3-dimensional state");
  }
  const long n_steps = step_count(cfg);
  Mat3 h = build_detector_hamiltonian(lasers);
  h(2, 2) += r_shift_angular;
  const Mat3 l = build_detector_jump(lasers);
  const Mat3 ldl = l.adjoint() * l;
  const double omega_max = std::max(h.cwiseAbs().maxCoeff(),
                                    angular_from_mhz(lasers.gamma_p_mhz));
  check_step_limit(omega_max, cfg);

  Mat3 rho = rho0.matrix;
  const double sample_spacing = cfg.dt_us * cfg.output_stride;
  DetectorTrajectory traj;

  const auto record = [&](long sample_index, const Mat3& state) {
    const double t_us = sample_index * sample_spacing;
    DensityMatrix snapshot(ComplexMatrix(state), rho0.label);
    check_validity(snapshot, cfg.tolerances, t_us);
    traj.times.push_back(t_us);
    traj.pop_g.push_back(state(0, 0).real());
    traj.pop_e.push_back(state(1, 1).real());
    traj.pop_r.push_back(state(2, 2).real());
    traj.states.push_back(std::move(snapshot));
  };

  record(0, rho);
  for (long n = 1; n <= n_steps; ++n) {
    rk4_step(rho, h, l, ldl, cfg.dt_us);
    if (n % cfg.output_stride == 0) record(n / cfg.output_stride, rho);
  }
  return traj;
}

}  // namespace rydnm
