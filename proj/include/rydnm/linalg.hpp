#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace rydnm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Hermiticity defect above which a matrix is rejected as "not Hermitian".
inline constexpr double kHermiticityTolerance = 1e-10;

/// Bipartite system-major basis layout: full index = system * detector_dim + detector.
/// The default 2x3 layout orders the basis as
/// |1g>,|1e>,|1r>,|2g>,|2e>,|2r> -> indices 0..5.
struct HilbertLayout {
  int system_dim = 2;
  int detector_dim = 3;

  int full_dim() const { return system_dim * detector_dim; }
  int index(int system_state, int detector_state) const {
    return system_state * detector_dim + detector_state;
  }
};

/// Square complex matrix tagged as a quantum state.
///
/// Construction does not validate; use validate_density_matrix to check the
/// Hermiticity / unit-trace / positivity invariants at a tolerance.
struct DensityMatrix {
  ComplexMatrix matrix;
  std::string label;

  DensityMatrix() = default;
  explicit DensityMatrix(ComplexMatrix m, std::string lbl = {});

  int dim() const { return static_cast<int>(matrix.rows()); }

  /// Rank-1 projector |i><i| of the given dimension.
  static DensityMatrix pure(int dim, int basis_index, std::string lbl = {});
};

/// Per-kind tolerances for density-matrix validity checks.
struct ToleranceProfile {
  double hermiticity = 1e-10;
  double trace = 1e-8;
  double positivity = 1e-8;  // min eigenvalue >= -positivity
};

struct ValidityReport {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;
  bool hermitian_ok = false;
  bool trace_ok = false;
  bool positive_ok = false;

  bool ok() const { return hermitian_ok && trace_ok && positive_ok; }
};

/// max_ij |A_ij - conj(A_ji)|
double hermiticity_defect(const ComplexMatrix& a);

/// Kronecker product in the system-major convention:
/// entry ((iA,iB),(jA,jB)) = A(iA,jA) * B(iB,jB).
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out the second factor of a dim_first x dim_second bipartite state.
DensityMatrix partial_trace_second(const DensityMatrix& rho, int dim_first,
                                   int dim_second);

/// Reduce a full system+detector state to the system factor.
DensityMatrix partial_trace_detector(const DensityMatrix& rho_full,
                                     const HilbertLayout& layout = {});

/// Real eigenvalues of a Hermitian matrix, ascending. Inputs with a
/// Hermiticity defect above kHermiticityTolerance are rejected rather than
/// symmetrized.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

/// Trace distance D(P,Q) = (1/2) sum_i |lambda_i(P - Q)|.
double trace_distance(const DensityMatrix& p, const DensityMatrix& q);

/// Two-level closed form sqrt((P00-Q00)^2 + |P10-Q10|^2); equals the
/// eigenvalue route for unit-trace 2x2 pairs.
double trace_distance_two_level(const DensityMatrix& p, const DensityMatrix& q);

ValidityReport validate_density_matrix(const DensityMatrix& rho,
                                       const ToleranceProfile& tol = {});

}  // namespace rydnm
