#include "rydnm/model.hpp"

#include <doctest.h>

#include <cmath>

using namespace rydnm;

namespace {

// Reference coupling values for the figure presets (value/2pi, MHz) with
// half-unit-in-the-last-quoted-digit tolerances.
struct ReferenceRow {
  Geometry geom;
  double j, u1, u2;
  double tol_j, tol_u1, tol_u2;
};

const ReferenceRow kReferenceRows[] = {
    {{18.0, 2.5, 15.5}, 0.28, -26.4, -0.37, 0.005, 0.05, 0.005},
    {{8.0, 2.3, 8.3}, 3.16, -36.9, -0.8, 0.005, 0.05, 0.05},
    {{9.5, 4.0, 10.3}, 1.89, -4.0, -0.11, 0.005, 0.05, 0.005},
};

}  // namespace

TEST_CASE("derive_couplings reproduces all nine reference values") {
  for (const ReferenceRow& row : kReferenceRows) {
    const EffectiveCouplings c = derive_couplings(row.geom, {});
    CHECK(std::abs(c.j_mhz() - row.j) <= row.tol_j);
    CHECK(std::abs(c.u1_mhz() - row.u1) <= row.tol_u1);
    CHECK(std::abs(c.u2_mhz() - row.u2) <= row.tol_u2);
  }
}

TEST_CASE("derive_couplings: angular conversion and error paths") {
  const Geometry geom{18.0, 2.5, 15.5};
  const EffectiveCouplings c = derive_couplings(geom, {});
  CHECK(c.j == doctest::Approx(kTwoPi * 1619.0 / std::pow(18.0, 3)).epsilon(1e-14));
  CHECK_THROWS_AS(derive_couplings({0.0, 1.0, 1.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(derive_couplings({1.0, -2.0, 1.0}, {}), std::invalid_argument);
}

TEST_CASE("interaction asymmetry across the presets") {
  // The detector sits close to atom 1, so |U1| dominates |U2| in every
  // preset (ratios ~70, ~46, ~36).
  for (const ReferenceRow& row : kReferenceRows) {
    const EffectiveCouplings c = derive_couplings(row.geom, {});
    CHECK(std::abs(c.u1) / std::abs(c.u2) > 30.0);
  }
}

TEST_CASE("system Hamiltonian is the J-weighted exchange") {
  CHECK(build_system_hamiltonian(0.0).isZero(0.0));
  const ComplexMatrix x = build_system_hamiltonian(1.0);
  CHECK(x(0, 1) == Complex(1.0));
  CHECK(x(1, 0) == Complex(1.0));
  CHECK(x(0, 0) == Complex(0.0));

  const double j = kTwoPi * 3.16;
  const std::vector<double> ev = hermitian_eigenvalues(build_system_hamiltonian(j));
  CHECK(ev[0] == doctest::Approx(-j).epsilon(1e-13));
  CHECK(ev[1] == doctest::Approx(j).epsilon(1e-13));
}

TEST_CASE("detector Hamiltonian entries") {
  CHECK(build_detector_hamiltonian({0.0, 0.0, 0.0, 0.0, 0.0}).isZero(0.0));

  // Two-photon resonant fig3 lasers: only |e> is shifted.
  const ComplexMatrix h = build_detector_hamiltonian({30.0, 30.0, -50.0, 50.0, 6.1});
  CHECK(h(0, 0) == Complex(0.0));
  CHECK(h(1, 1).real() == doctest::Approx(kTwoPi * 50.0).epsilon(1e-14));
  CHECK(h(2, 2) == Complex(0.0));
  CHECK(h(1, 0).real() == doctest::Approx(kTwoPi * 15.0).epsilon(1e-14));
  CHECK(h(2, 1).real() == doctest::Approx(kTwoPi * 15.0).epsilon(1e-14));
  CHECK(hermiticity_defect(h) == 0.0);
}

TEST_CASE("resonant dark state is annihilated by H_D and L") {
  const LaserParams lasers{12.0, 20.0, 0.0, 0.0, 6.1};
  const ComplexMatrix h = build_detector_hamiltonian(lasers);
  Eigen::Vector3cd dark;
  dark << lasers.omega_c_mhz, 0.0, -lasers.omega_p_mhz;
  dark.normalize();
  CHECK((h * dark).norm() < 1e-12);
  CHECK((build_detector_jump(lasers) * dark).norm() < 1e-12);
}

TEST_CASE("interaction Hamiltonian is diagonal at the Rydberg slots") {
  CHECK(build_interaction_hamiltonian({0.0, 0.0, 0.0}).isZero(0.0));

  const ComplexMatrix single = build_interaction_hamiltonian({0.0, 1.0, 0.0});
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      CHECK(single(i, j) == (i == 2 && j == 2 ? Complex(1.0) : Complex(0.0)));
    }
  }

  const EffectiveCouplings fig3 = derive_couplings({8.0, 2.3, 8.3}, {});
  const ComplexMatrix h = build_interaction_hamiltonian(fig3);
  CHECK(h(2, 2).real() == doctest::Approx(fig3.u1).epsilon(1e-14));
  CHECK(h(5, 5).real() == doctest::Approx(fig3.u2).epsilon(1e-14));
  CHECK(std::abs(h(2, 2).real() + kTwoPi * 36.9) < kTwoPi * 0.05);
}

TEST_CASE("full model assembly") {
  PhysicalScenario zero;
  zero.j_mhz = 0.0;
  zero.lasers = LaserParams{0.0, 0.0, 0.0, 0.0, 6.1};
  const EffectiveModel m = build_full_model(zero);
  CHECK(m.hamiltonian.isZero(0.0));
  const double root_gamma = std::sqrt(angular_from_mhz(6.1));
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const bool jump_slot = (i == 0 && j == 1) || (i == 3 && j == 4);
      CHECK(m.jump(i, j) == (jump_slot ? Complex(root_gamma) : Complex(0.0)));
    }
  }
}

TEST_CASE("full Hamiltonian element check and Hermiticity") {
  PhysicalScenario s;
  s.geometry = Geometry{8.0, 2.3, 8.3};
  s.lasers = LaserParams{30.0, 30.0, -50.0, 30.0, 6.1};
  const EffectiveModel m = build_full_model(s);
  // H[2,2] = U1 - (Delta_p + Delta_c): hand-expanded from the three terms.
  const double expected =
      m.couplings.u1 - angular_from_mhz(s.lasers.delta_p_mhz + s.lasers.delta_c_mhz);
  CHECK(m.hamiltonian(2, 2).real() == doctest::Approx(expected).epsilon(1e-14));
  CHECK(hermiticity_defect(m.hamiltonian) < 1e-12);
}

TEST_CASE("interaction commutes with the system population operator") {
  const EffectiveCouplings c = derive_couplings({8.0, 2.3, 8.3}, {});
  const ComplexMatrix h_sd = build_interaction_hamiltonian(c);
  ComplexMatrix pop = ComplexMatrix::Zero(6, 6);
  for (int d = 0; d < 3; ++d) {
    pop(d, d) = 1.0;
    pop(3 + d, 3 + d) = -1.0;
  }
  CHECK((h_sd * pop - pop * h_sd).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scenario mode exclusivity") {
  PhysicalScenario both;
  both.geometry = Geometry{8.0, 2.3, 8.3};
  both.j_mhz = 1.0;
  CHECK_THROWS_AS(build_full_model(both), std::invalid_argument);

  PhysicalScenario neither;
  CHECK_THROWS_AS(build_full_model(neither), std::invalid_argument);

  PhysicalScenario negative;
  negative.j_mhz = 1.0;
  negative.lasers.omega_p_mhz = -1.0;
  CHECK_THROWS_AS(build_full_model(negative), std::invalid_argument);
}

TEST_CASE("initial states and their reduced distance") {
  const DensityMatrix rho1 = initial_state(InitialState::state1);
  const DensityMatrix rho2 = initial_state(InitialState::state2);
  CHECK(rho1.matrix(0, 0) == Complex(1.0));
  CHECK(rho1.matrix.cwiseAbs().sum() == 1.0);
  CHECK(rho2.matrix(3, 3) == Complex(1.0));
  CHECK(rho2.matrix.cwiseAbs().sum() == 1.0);

  const double d = trace_distance_two_level(partial_trace_detector(rho1),
                                            partial_trace_detector(rho2));
  CHECK(d == doctest::Approx(1.0).epsilon(1e-14));
}
