#include "rydnm/model.hpp"

#include <cmath>
#include <stdexcept>

namespace rydnm {

EffectiveCouplings derive_couplings(const Geometry& geom,
                                    const InteractionCoefficients& coeff) {
  if (geom.r_um <= 0.0 || geom.rd1_um <= 0.0 || geom.rd2_um <= 0.0) {
    throw std::invalid_argument(
        "derive_couplings: all distances must be strictly positive");
  }
  const double r3 = std::pow(geom.r_um, 3);
  const double rd1_4 = std::pow(geom.rd1_um, 4);
  const double rd1_6 = std::pow(geom.rd1_um, 6);
  const double rd2_4 = std::pow(geom.rd2_um, 4);
  const double rd2_6 = std::pow(geom.rd2_um, 6);
  EffectiveCouplings c;
  c.j = angular_from_mhz(coeff.c3_mhz_um3 / r3);
  c.u1 = angular_from_mhz(coeff.c4rp_mhz_um4 / rd1_4 + coeff.c6rs_mhz_um6 / rd2_6);
  c.u2 = angular_from_mhz(coeff.c6rs_mhz_um6 / rd1_6 + coeff.c4rp_mhz_um4 / rd2_4);
  return c;
}

ComplexMatrix build_system_hamiltonian(double j_angular) {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 1) = j_angular;
  h(1, 0) = j_angular;
  return h;
}

ComplexMatrix build_detector_hamiltonian(const LaserParams& lasers) {
  const double omega_p = angular_from_mhz(lasers.omega_p_mhz);
  const double omega_c = angular_from_mhz(lasers.omega_c_mhz);
  const double delta_p = angular_from_mhz(lasers.delta_p_mhz);
  const double delta_c = angular_from_mhz(lasers.delta_c_mhz);
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(1, 0) = 0.5 * omega_p;
  h(0, 1) = 0.5 * omega_p;
  h(2, 1) = 0.5 * omega_c;
  h(1, 2) = 0.5 * omega_c;
  h(1, 1) = -delta_p;
  h(2, 2) = -(delta_p + delta_c);
  return h;
}

ComplexMatrix build_interaction_hamiltonian(const EffectiveCouplings& c) {
  const HilbertLayout layout;
  ComplexMatrix h = ComplexMatrix::Zero(layout.full_dim(), layout.full_dim());
  const int rydberg = layout.detector_dim - 1;
  h(layout.index(0, rydberg), layout.index(0, rydberg)) = c.u1;
  h(layout.index(1, rydberg), layout.index(1, rydberg)) = c.u2;
  return h;
}

ComplexMatrix build_detector_jump(const LaserParams& lasers) {
  if (lasers.gamma_p_mhz < 0.0) {
    throw std::invalid_argument("build_detector_jump: gamma_p must be >= 0");
  }
  ComplexMatrix l = ComplexMatrix::Zero(3, 3);
  l(0, 1) = std::sqrt(angular_from_mhz(lasers.gamma_p_mhz));
  return l;
}

EffectiveModel build_full_model(const PhysicalScenario& scenario) {
  const bool direct_mode =
      scenario.j_mhz.has_value() || scenario.u1_mhz.has_value() ||
      scenario.u2_mhz.has_value();
  if (scenario.geometry.has_value() == direct_mode) {
    throw std::invalid_argument(
        "build_full_model: exactly one of geometry mode or direct-coupling "
        "mode must be set");
  }
  if (scenario.lasers.omega_p_mhz < 0.0 || scenario.lasers.omega_c_mhz < 0.0 ||
      scenario.lasers.gamma_p_mhz < 0.0) {
    throw std::invalid_argument(
        "build_full_model: Rabi frequencies and gamma_p must be >= 0");
  }

  EffectiveModel model;
  if (scenario.geometry) {
    model.couplings = derive_couplings(*scenario.geometry, scenario.coefficients);
  } else {
    model.couplings.j = angular_from_mhz(scenario.j_mhz.value_or(0.0));
    model.couplings.u1 = angular_from_mhz(scenario.u1_mhz.value_or(0.0));
    model.couplings.u2 = angular_from_mhz(scenario.u2_mhz.value_or(0.0));
  }
  model.lasers = scenario.lasers;

  const ComplexMatrix hs = build_system_hamiltonian(model.couplings.j);
  const ComplexMatrix hd = build_detector_hamiltonian(scenario.lasers);
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
  model.hamiltonian = tensor_product(hs, i3) + tensor_product(i2, hd) +
                      build_interaction_hamiltonian(model.couplings);
  model.jump = tensor_product(i2, build_detector_jump(scenario.lasers));
  return model;
}

DensityMatrix initial_state(InitialState which, const HilbertLayout& layout) {
  const int system_index = which == InitialState::state1 ? 0 : 1;
  const int full_index = layout.index(system_index, 0);
  return DensityMatrix::pure(layout.full_dim(), full_index,
                             which == InitialState::state1 ? "rho1" : "rho2");
}

}  // namespace rydnm
