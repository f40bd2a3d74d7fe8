#pragma once

#include <vector>

#include "qifs/kraus.hpp"
#include "qifs/solvers.hpp"
#include "qifs/stochastic.hpp"

namespace qifs {

// Row-stochastic matrix of branch transition rates at ρ:
//   a[i][j] = tr(W_j V_iρV_i† W_j†) / tr(V_iρV_i†).
// A branch whose image trace vanishes while carrying probability is an error
// (DegenerateBranch); a mass-free degenerate branch yields an all-zero row.
std::vector<std::vector<double>> branch_transition_matrix(const QifsModel& m,
                                                          const DensityMatrix& rho);

// Stationary entropy of the model at its solved fixed point:
//   h = −Σ_i tr(W_iρW_i†) Σ_j a_ij·ln a_ij ∈ [0, ln k].
// ρ_W must satisfy Λ(ρ_W) = ρ_W within fixed_point_tol (PreconditionUnmet
// otherwise) — the definition is only meaningful at the barycenter.
double qifs_entropy(const QifsModel& m, const DensityMatrix& rho_w,
                    double fixed_point_tol = 1e-8);

// Entropy of an irreducible column-stochastic chain:
//   H(P) = −Σ_j π_j Σ_i p_ij·ln p_ij,  P π = π.
double markov_entropy(const StochasticMatrix& p);

enum class PressureForm { Trace, Coordinate, Classic };

// One evaluation of the pressure inequality lhs ≤ ln β together with the
// equality-condition residual. gap = log_beta − lhs is ≥ 0 up to rounding;
// equality_residual ≈ 0 exactly when the inequality is tight.
struct PressureReport {
  double entropy_term = 0.0;
  double potential_term = 0.0;
  double lhs = 0.0;       // entropy_term + potential_term
  double log_beta = 0.0;
  double gap = 0.0;       // log_beta − lhs
  double equality_residual = 0.0;
  PressureForm form = PressureForm::Trace;
  int coord_l = -1;  // set for the coordinate form only
  int coord_m = -1;
};

// Trace form: lhs = h_V(W) + Σ_j tr(W_jρ_WW_j†)·ln(tr(H_jρ_βH_j†)·tr(V_jρ_βV_j†)),
// residual = max_{i,j} |tr(H_jρ_βH_j†)tr(V_jρ_βV_j†)/β − a_ij|.
// Throws DegeneratePotential when a weighted branch would take ln of a
// nonpositive product.
PressureReport pressure_check_trace_form(const QifsModel& m, const KrausFamily& potential,
                                         const EigenResult& eig,
                                         const DensityMatrix& rho_w);

// Coordinate form at entry (l, m):
//   lhs = h_V(W) + Σ_j tr(W_jρ_WW_j†)·[ln tr(H_jρ_βH_j†) + ln((V_jρ_βV_j†)_{lm}/(ρ_β)_{lm})].
// Throws CoordinateDegenerate when (ρ_β)_{lm} ≈ 0 or some ratio fails to be
// a positive real.
PressureReport pressure_check_coordinate_form(const QifsModel& m,
                                              const KrausFamily& potential,
                                              const EigenResult& eig,
                                              const DensityMatrix& rho_w, int l,
                                              int m_idx);

// Classical chain inequality for a real k×k potential matrix A (row-major)
// and a column-stochastic Q:
//   −Σ_j π_j Σ_i q_ij ln q_ij + Σ_j π_j Σ_i q_ij a_ij ≤ ln β,
// with β the dominant eigenvalue of the entrywise exponential exp(A) and π
// the stationary vector of Q. The equality residual measures
// max_{i,j} |q_ij − exp(a_ij)·v_i/(β·v_j)| against the left Perron vector v.
PressureReport classic_inequality_check(const std::vector<double>& a,
                                        const StochasticMatrix& q);

// Scalar weight family Ŵ_j = √(tr(H_jρ_βH_j†)·tr(V_jρ_βV_j†)/β)·I, which is
// normalized identically (the trace of the eigen-equation) and makes the
// trace-form inequality an equality. The lemma behind it assumes one of:
// every V_i unitary, every V_i a scalar multiple of I, or ρ_W fixing every
// branch; with enforce_preconditions the function verifies one of these and
// throws PreconditionUnmet otherwise. The construction itself is evaluated
// as stated either way.
KrausFamily maximizing_weights(const KrausFamily& dynamics, const KrausFamily& potential,
                               const EigenResult& eig,
                               bool enforce_preconditions = true);

// H̃_i = √α·H_i. Solving the eigenproblem with H̃ scales β by α and keeps ρ_β.
KrausFamily renormalize_potential(const KrausFamily& potential, double alpha);

// The entropy-maximizing uniform family W_i = I/√k.
KrausFamily uniform_weight_family(int arity, int dim);

// Grid search for the capacity-cost value: among the candidate weight
// families, solve each fixed point, keep those with tr(cost·ρ_W) ≤ budget,
// and return the best entropy. Throws Infeasible when no candidate passes.
struct CapacityResult {
  double entropy = 0.0;
  double cost = 0.0;
  int candidate_index = -1;
  KrausFamily weights;
};
CapacityResult capacity_cost(const KrausFamily& dynamics,
                             const std::vector<KrausFamily>& candidates,
                             const ComplexMatrix& cost_observable, double budget,
                             const SolveConfig& cfg = {});

}  // namespace qifs
