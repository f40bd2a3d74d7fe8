#include "qifs/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "qifs/errors.hpp"
#include "qifs/hermitian_eigen.hpp"

namespace qifs {

double eta(double x) {
  if (x < 0.0) throw Error(ErrorCode::BadInput, "eta is undefined for negative arguments");
  if (x == 0.0) return 0.0;
  return -x * std::log(x);
}

double shannon_entropy(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p < 0.0 && p > -1e-14) p = 0.0;  // round-off guard
    h += eta(p);
  }
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lam : hermitian_eigenvalues(rho.mat())) {
    lam = std::clamp(lam, 0.0, 1.0);
    s += eta(lam);
  }
  return std::max(s, 0.0);
}

}  // namespace qifs
