#pragma once

#include "rydnm/linalg.hpp"

#include <optional>
#include <string>

namespace rydnm {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// All user-facing frequencies follow the value/2pi-in-MHz convention;
/// internally everything is angular (rad/us). With time in us the two are
/// related by a single factor of 2pi.
inline double angular_from_mhz(double f_mhz) { return kTwoPi * f_mhz; }
inline double mhz_from_angular(double omega) { return omega / kTwoPi; }

/// Dispersion coefficients between the detector Rydberg level and the two
/// dimer states, in the value/2pi convention (MHz um^n).
struct InteractionCoefficients {
  double c3_mhz_um3 = 1619.0;    // dimer dipole-dipole, |1><2| exchange
  double c4rp_mhz_um4 = -1032.0; // detector |r> with dimer |p|-like state
  double c6rs_mhz_um6 = -87.0;   // detector |r> with dimer |s|-like state
};

/// Dimer separation and detector-atom distances, in um.
struct Geometry {
  double r_um = 0.0;
  double rd1_um = 0.0;
  double rd2_um = 0.0;
};

/// Probe/control laser parameters and the decay rate of |e>, value/2pi MHz.
struct LaserParams {
  double omega_p_mhz = 0.0;
  double omega_c_mhz = 0.0;
  double delta_p_mhz = 0.0;
  double delta_c_mhz = 0.0;
  double gamma_p_mhz = 6.1;
};

/// Derived couplings in angular units (rad/us).
struct EffectiveCouplings {
  double j = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;

  double j_mhz() const { return mhz_from_angular(j); }
  double u1_mhz() const { return mhz_from_angular(u1); }
  double u2_mhz() const { return mhz_from_angular(u2); }
};

/// Assembled operators for the full 6-dimensional system+detector space.
struct EffectiveModel {
  ComplexMatrix hamiltonian;  // 6x6, rad/us
  ComplexMatrix jump;         // 6x6, sqrt(rad/us)
  EffectiveCouplings couplings;
  LaserParams lasers;
  HilbertLayout layout;
};

/// Everything needed to build a model: either geometry + coefficients or
/// direct couplings, plus lasers. Exactly one coupling mode is set.
struct PhysicalScenario {
  std::optional<Geometry> geometry;
  InteractionCoefficients coefficients;
  /// Direct couplings, value/2pi MHz (used when geometry is not set).
  std::optional<double> j_mhz;
  std::optional<double> u1_mhz;
  std::optional<double> u2_mhz;
  LaserParams lasers;
};

/// J = C3/R^3, U1 = C4rp/RD1^4 + C6rs/RD2^6, U2 = C6rs/RD1^6 + C4rp/RD2^4,
/// converted to rad/us. Distances must be strictly positive.
EffectiveCouplings derive_couplings(const Geometry& geom,
                                    const InteractionCoefficients& coeff);

/// [[0, J],[J, 0]] in the |1>,|2> pair basis. J in rad/us.
ComplexMatrix build_system_hamiltonian(double j_angular);

/// Three-level detector Hamiltonian in the (g,e,r) basis, rad/us:
/// (Omega_p/2)|e><g| + (Omega_c/2)|r><e| + h.c.
///  - Delta_p |e><e| - (Delta_p + Delta_c)|r><r|.
ComplexMatrix build_detector_hamiltonian(const LaserParams& lasers);

/// U1 |1><1| x |r><r| + U2 |2><2| x |r><r| (diagonal in the full basis).
ComplexMatrix build_interaction_hamiltonian(const EffectiveCouplings& c);

/// sqrt(Gamma_p) |g><e| on the detector factor.
ComplexMatrix build_detector_jump(const LaserParams& lasers);

/// H = H_S x 1_D + 1_S x H_D + H_SD and K = 1_S x L.
EffectiveModel build_full_model(const PhysicalScenario& scenario);

enum class InitialState { state1, state2 };

/// |1><1| x |g><g| (full index 0) or |2><2| x |g><g| (full index 3).
DensityMatrix initial_state(InitialState which,
                            const HilbertLayout& layout = {});

}  // namespace rydnm
