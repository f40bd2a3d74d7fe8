#pragma once

#include <vector>

#include "qifs/density_matrix.hpp"
#include "qifs/kraus.hpp"

namespace qifs {

// Finite ensemble {ρ_i; p_i}: a probability for each prepared state.
struct Ensemble {
  std::vector<DensityMatrix> states;
  std::vector<double> probs;

  // Validates matching sizes, a common dimension, and probabilities that are
  // nonnegative (tiny negatives clamped) and sum to one within 1e-12.
  static Ensemble make(std::vector<DensityMatrix> states, std::vector<double> probs);

  int size() const { return static_cast<int>(states.size()); }
  int dim() const;
};

// ρ̄ = Σ p_i ρ_i.
DensityMatrix average_state(const Ensemble& e);

// ξ(ℰ) = S(ρ̄) − Σ p_i S(ρ_i). Nonnegative up to round-off by concavity.
double holevo_information(const Ensemble& e);

// The branch-label ensemble of a model at its stationary state: state i is
// diagonal on a k-point label space (one basis vector per branch) and carries
// row i of the branch transition matrix; its probability is p_i(ρ_W). A
// branch with neither weight nor image contributes a maximally mixed
// placeholder at probability zero.
Ensemble induced_ensemble(const QifsModel& m, const DensityMatrix& rho_w,
                          double fixed_point_tol = 1e-8);

// Positive-operator-valued measure: PSD elements that sum to the identity.
class Povm {
 public:
  // Validates hermiticity and positivity of every element (1e-10) and
  // completeness of the sum (NotNormalized beyond 1e-10).
  explicit Povm(std::vector<ComplexMatrix> elements);

  int size() const { return static_cast<int>(elements_.size()); }
  int dim() const { return elements_.front().dim(); }
  const ComplexMatrix& element(int i) const { return elements_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<ComplexMatrix> elements_;
};

// Measurement induced by a normalized weight family: elements W_i†W_i.
Povm povm_from_weights(const KrausFamily& w);

// Carries a system-space POVM onto a model's k-point label space. Label j
// stands for the branch image F_j(ρ_W), so the probe for outcome y is the
// diagonal matrix with entries tr(P_y·F_j(ρ_W)); a label whose branch has no
// image is represented by the maximally mixed system state. Each probe is
// PSD and the family still sums to the identity, so the lift is again a
// POVM and the Holevo bound applies to measurements factoring through it.
Povm lift_to_label_space(const Povm& system_povm, const QifsModel& m,
                         const DensityMatrix& rho_w);

// Born-rule joint distribution p(x,y) = p_x·tr(P_y ρ_x); rows index the
// ensemble, columns the measurement outcome.
std::vector<std::vector<double>> born_joint(const Ensemble& e, const Povm& povm);

// I(X:Y) = H(X) + H(Y) − H(X,Y) for a joint distribution (rows x, columns y),
// with the 0·ln 0 = 0 convention; round-off negatives are clamped to zero.
double mutual_information(const std::vector<std::vector<double>>& joint);

}  // namespace qifs
