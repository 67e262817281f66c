#include "rydnm/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace rydnm {

DensityMatrix::DensityMatrix(ComplexMatrix m, std::string lbl)
    : matrix(std::move(m)), label(std::move(lbl)) {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("DensityMatrix: matrix must be square");
  }
}

DensityMatrix DensityMatrix::pure(int dim, int basis_index, std::string lbl) {
  if (basis_index < 0 || basis_index >= dim) {
    throw std::invalid_argument("DensityMatrix::pure: basis index out of range");
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(basis_index, basis_index) = 1.0;
  return DensityMatrix(std::move(m), std::move(lbl));
}

double hermiticity_defect(const ComplexMatrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols();
  const Eigen::Index rb = b.rows(), cb = b.cols();
  ComplexMatrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix partial_trace_second(const DensityMatrix& rho, int dim_first,
                                   int dim_second) {
  if (rho.dim() != dim_first * dim_second) {
    throw std::invalid_argument(
        "partial_trace_second: state dimension does not match factor dims");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_first, dim_first);
  for (int a = 0; a < dim_first; ++a) {
    for (int b = 0; b < dim_first; ++b) {
      Complex sum = 0.0;
      for (int k = 0; k < dim_second; ++k) {
        sum += rho.matrix(a * dim_second + k, b * dim_second + k);
      }
      out(a, b) = sum;
    }
  }
  return DensityMatrix(std::move(out), rho.label);
}

DensityMatrix partial_trace_detector(const DensityMatrix& rho_full,
                                     const HilbertLayout& layout) {
  if (rho_full.dim() != layout.full_dim()) {
    throw std::invalid_argument(
        "partial_trace_detector: state dimension does not match layout");
  }
  return partial_trace_second(rho_full, layout.system_dim, layout.detector_dim);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
  }
  if (hermiticity_defect(a) > kHermiticityTolerance) {
    throw std::invalid_argument(
        "hermitian_eigenvalues: input exceeds Hermiticity tolerance");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
  }
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double trace_distance(const DensityMatrix& p, const DensityMatrix& q) {
  if (p.dim() != q.dim()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  const std::vector<double> ev = hermitian_eigenvalues(p.matrix - q.matrix);
  double sum = 0.0;
  for (double lambda : ev) sum += std::abs(lambda);
  return 0.5 * sum;
}

double trace_distance_two_level(const DensityMatrix& p,
                                const DensityMatrix& q) {
  if (p.dim() != 2 || q.dim() != 2) {
    throw std::invalid_argument("trace_distance_two_level: states must be 2x2");
  }
  if (std::abs(p.matrix.trace() - q.matrix.trace()) > 1e-6) {
    throw std::invalid_argument(
        "trace_distance_two_level: states must have equal (unit) trace");
  }
  const double dpop = p.matrix(0, 0).real() - q.matrix(0, 0).real();
  const Complex dcoh = p.matrix(1, 0) - q.matrix(1, 0);
  return std::sqrt(dpop * dpop + std::norm(dcoh));
}

ValidityReport validate_density_matrix(const DensityMatrix& rho,
                                       const ToleranceProfile& tol) {
  ValidityReport report;
  report.hermiticity_defect = hermiticity_defect(rho.matrix);
  report.trace_defect = std::abs(rho.matrix.trace() - Complex(1.0, 0.0));
  // Eigenvalues of the symmetrized matrix; the defect is reported separately.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      0.5 * (rho.matrix + rho.matrix.adjoint()), Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  report.hermitian_ok = report.hermiticity_defect <= tol.hermiticity;
  report.trace_ok = report.trace_defect <= tol.trace;
  report.positive_ok = report.min_eigenvalue >= -tol.positivity;
  return report;
}

}  // namespace rydnm
