#pragma once

#include "rydnm/linalg.hpp"

#include <random>

namespace rydnm::testing {

/// Random PSD unit-trace Hermitian matrix via AA'/Tr(AA').
inline DensityMatrix random_state(int dim, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      a(i, j) = Complex(dist(rng), dist(rng));
    }
  }
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace();
  return DensityMatrix(std::move(rho));
}

inline ComplexMatrix random_hermitian(int dim, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      a(i, j) = Complex(dist(rng), dist(rng));
    }
  }
  return ComplexMatrix(0.5 * (a + a.adjoint()));
}

}  // namespace rydnm::testing
