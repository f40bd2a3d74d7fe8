#include "qifs/density_matrix.hpp"

#include <cmath>
#include <sstream>

#include "qifs/errors.hpp"
#include "qifs/hermitian_eigen.hpp"

namespace qifs {

DensityMatrix DensityMatrix::validated(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.dim() == 0) throw Error(ErrorCode::BadInput, "density matrix must be nonempty");
  if (!m.is_finite()) throw Error(ErrorCode::BadInput, "density matrix has non-finite entries");

  const double herm = hermiticity_defect(m);
  if (herm > tol.hermitian) {
    std::ostringstream os;
    os << "not Hermitian (defect " << herm << ")";
    throw Error(ErrorCode::BadInput, os.str());
  }
  const double tr_err = std::abs(m.trace() - Complex(1.0, 0.0));
  if (tr_err > tol.trace) {
    std::ostringstream os;
    os << "trace differs from 1 by " << tr_err;
    throw Error(ErrorCode::BadInput, os.str());
  }
  ComplexMatrix h = hermitize(m);
  const double min_eig = min_eigenvalue(h);
  if (min_eig < -tol.psd) {
    std::ostringstream os;
    os << "not positive semidefinite (min eigenvalue " << min_eig << ")";
    throw Error(ErrorCode::BadInput, os.str());
  }
  return DensityMatrix(std::move(h));
}

DensityMatrix DensityMatrix::trusted(const ComplexMatrix& m) {
  ComplexMatrix h = hermitize(m);
  const double tr = h.trace().real();
  if (!(tr > 0.0) || !h.is_finite())
    throw Error(ErrorCode::ZeroImage, "state has non-positive trace");
  h *= Complex(1.0 / tr, 0.0);
  return DensityMatrix(std::move(h));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim <= 0) throw Error(ErrorCode::BadInput, "dimension must be positive");
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= Complex(1.0 / dim, 0.0);
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& probs, const Tolerances& tol) {
  return validated(ComplexMatrix::diagonal(probs), tol);
}

DensityMatrix DensityMatrix::pure(const std::vector<Complex>& amplitudes) {
  const int n = static_cast<int>(amplitudes.size());
  if (n == 0) throw Error(ErrorCode::BadInput, "empty amplitude vector");
  double norm_sq = 0.0;
  for (const auto& a : amplitudes) norm_sq += std::norm(a);
  if (norm_sq <= 0.0) throw Error(ErrorCode::BadInput, "zero amplitude vector");
  ComplexMatrix m(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      m(r, c) = amplitudes[static_cast<size_t>(r)] * std::conj(amplitudes[static_cast<size_t>(c)]) / norm_sq;
  return DensityMatrix(hermitize(m));
}

}  // namespace qifs
