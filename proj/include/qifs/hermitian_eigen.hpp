#pragma once

#include <vector>

#include "qifs/complex_matrix.hpp"

namespace qifs {

// Full spectral decomposition of a Hermitian matrix: m = V · diag(λ) · V†,
// eigenvalues ascending, eigenvectors in the columns of `vectors`.
struct HermitianEigensystem {
  std::vector<double> values;
  ComplexMatrix vectors;
};

// Cyclic complex Jacobi iteration; intended for the small dimensions used
// here (≤ 8 state space, ≤ 64 superoperator side checks).
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m);

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& hermitian);

// Principal square root of a positive semidefinite Hermitian matrix.
// Slightly negative eigenvalues (numerical noise) are clamped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

}  // namespace qifs
