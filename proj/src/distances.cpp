#include "qifs/distances.hpp"

#include <cmath>

#include "qifs/hermitian_eigen.hpp"

namespace qifs {

double distance_hs(const DensityMatrix& a, const DensityMatrix& b) {
  return (a.mat() - b.mat()).frobenius_norm();
}

double distance_trace(const DensityMatrix& a, const DensityMatrix& b) {
  double s = 0.0;
  for (double lam : hermitian_eigenvalues(a.mat() - b.mat())) s += std::abs(lam);
  return s;
}

double distance_bures(const DensityMatrix& a, const DensityMatrix& b) {
  ComplexMatrix root_a = psd_sqrt(a.mat());
  ComplexMatrix inner = root_a * b.mat() * root_a;
  const double fidelity_root = psd_sqrt(inner).trace().real();
  const double arg = 2.0 * (1.0 - fidelity_root);
  return std::sqrt(std::max(arg, 0.0));
}

}  // namespace qifs
