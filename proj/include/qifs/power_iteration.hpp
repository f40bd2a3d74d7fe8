#pragma once

#include <vector>

#include "qifs/complex_matrix.hpp"

namespace qifs {

struct PowerConfig {
  double tol = 1e-12;      // residual target, ‖Mv − λv‖₂ with ‖v‖₂ = 1
  long max_iter = 100000;
};

struct DominantEigenpair {
  double value = 0.0;              // dominant eigenvalue (real part; checked real)
  std::vector<double> vector;      // real representative, unit 1-norm when applicable
  long iterations = 0;
  double residual = 0.0;
};

// Plain power iteration with a deterministic seed. Assumes a real dominant
// eigenvalue (verified post hoc). For entrywise-nonnegative matrices the
// returned vector is nonnegative with unit 1-norm; otherwise it is a real
// unit-2-norm representative (phase fixed by the largest entry).
DominantEigenpair dominant_eigenpair(const ComplexMatrix& m, const PowerConfig& cfg = {});

}  // namespace qifs
