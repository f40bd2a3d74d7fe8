#pragma once

#include <vector>

#include "qifs/complex_matrix.hpp"
#include "qifs/density_matrix.hpp"

namespace qifs {

// A finite family of same-dimension operators {K_1, ..., K_k}. Used for the
// dynamics family V, the measurement/weight family W (normalized:
// Σ K_i†K_i = I) and potential families H (arbitrary).
class KrausFamily {
 public:
  explicit KrausFamily(std::vector<ComplexMatrix> ops);

  int arity() const { return static_cast<int>(ops_.size()); }
  int dim() const { return ops_.front().dim(); }
  const ComplexMatrix& op(int i) const;
  const std::vector<ComplexMatrix>& ops() const { return ops_; }

  ComplexMatrix gram_sum() const;            // Σ K_i†K_i
  double normalization_defect() const;       // ‖Σ K_i†K_i − I‖_max
  bool is_normalized(double tol = 1e-10) const { return normalization_defect() <= tol; }

  // Every operator multiplied by the same scalar.
  KrausFamily scaled(Complex factor) const;

 private:
  std::vector<ComplexMatrix> ops_;
};

// An iterated-function-system model on density matrices: branch maps
// ρ ↦ V_iρV_i†/tr(V_iρV_i†) selected with probabilities tr(W_iρW_i†).
// The weight family must be normalized so probabilities sum to one.
struct QifsModel {
  KrausFamily dynamics;  // V_i
  KrausFamily weights;   // W_i

  static QifsModel make(KrausFamily dynamics, KrausFamily weights, double norm_tol = 1e-10);
  // Homogeneous case W = V (the dynamics family must itself be normalized).
  static QifsModel homogeneous(KrausFamily dynamics, double norm_tol = 1e-10);

  int dim() const { return dynamics.dim(); }
  int arity() const { return dynamics.arity(); }
};

}  // namespace qifs
