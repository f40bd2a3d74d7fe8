#pragma once

#include <vector>

#include "qifs/complex_matrix.hpp"

namespace qifs {

// Validation tolerances for state matrices. All defaults follow the library's
// numeric conventions (see README): absolute, dimension-independent.
struct Tolerances {
  double hermitian = 1e-10;  // ‖ρ − ρ†‖_max
  double psd = 1e-10;        // allowed negative eigenvalue magnitude
  double trace = 1e-10;      // |tr ρ − 1|
};

// A validated density matrix: Hermitian, positive semidefinite and unit trace
// within `Tolerances`. Construction through the named factories is the only
// way to obtain one, so downstream code can rely on the invariant.
class DensityMatrix {
 public:
  DensityMatrix() = default;

  // Full check: hermiticity, trace and minimum eigenvalue. Throws
  // ErrorCode::BadInput with the violated property in the message.
  static DensityMatrix validated(const ComplexMatrix& m, const Tolerances& tol = {});

  // Fast path for tight loops: hermitizes and renormalises the trace but skips
  // the eigenvalue check. Used where positivity holds by construction
  // (images of completely positive maps applied to valid states).
  static DensityMatrix trusted(const ComplexMatrix& m);

  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix diagonal(const std::vector<double>& probs, const Tolerances& tol = {});
  static DensityMatrix pure(const std::vector<Complex>& amplitudes);

  const ComplexMatrix& mat() const { return mat_; }
  int dim() const { return mat_.dim(); }
  bool empty() const { return mat_.empty(); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

}  // namespace qifs
