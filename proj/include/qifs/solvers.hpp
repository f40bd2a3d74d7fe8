#pragma once

#include <array>
#include <optional>

#include "qifs/kraus.hpp"
#include "qifs/model_ops.hpp"

namespace qifs {

struct SolveConfig {
  double tol = 1e-12;                      // Hilbert–Schmidt distance between successive iterates
  long max_iter = 100000;
  int regularization_n0 = 0;               // 0 disables the regularized fallback ladder
  std::optional<DensityMatrix> seed_state; // defaults to the maximally mixed state
};

struct FixedPointResult {
  DensityMatrix state;
  long iterations = 0;
  double residual = 0.0;  // distance between the state and its image
};

// Iterates ρ ← Λ(ρ) to a fixed point of the Markov operator.
FixedPointResult solve_lambda_fixed_point(const QifsModel& m, const SolveConfig& cfg = {});

// Weighted transfer operator L(ρ) = Σ_i tr(H_iρH_i†)·V_iρV_i† (hermitized,
// not normalized).
ComplexMatrix ruelle_apply(const KrausFamily& potential, const KrausFamily& dynamics,
                           const DensityMatrix& rho);

struct EigenResult {
  double beta = 0.0;        // dominant eigenvalue, tr L(ρ_β)
  DensityMatrix rho_beta;   // normalized eigenstate
  long iterations = 0;
  double residual = 0.0;    // distance between L(ρ_β)/β and ρ_β
};

// Normalized power iteration on ρ ← L(ρ)/tr L(ρ). When the direct iteration
// breaks down (zero image / stall) and regularization_n0 > 0, retries on the
// smoothed maps ρ ↦ L(ρ + I/n)/tr(·) for n = n0, 2n0, 4n0, 8n0 (each warm-
// started from the last), then polishes with the direct map.
EigenResult solve_ruelle_eigen(const KrausFamily& potential, const KrausFamily& dynamics,
                               const SolveConfig& cfg = {});

// Exact spectral data of the 2×2 positive matrix [[a,b],[c,d]] acting on
// diagonal states, with ζ = sqrt((d−a)² + 4bc):
//   λ± = (a+d)/2 ± ζ/2,
//   dominant eigenstate diag((a−d+ζ), 2c)/(a−d+ζ+2c).
struct ClosedForm2x2 {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double zeta = 0.0;
  DensityMatrix rho_plus;
  // The subdominant eigenvector, scaled to |x|+|y| = 1 with x ≥ 0. For
  // positive inputs it always has mixed signs, hence is never a state.
  std::array<double, 2> minus_direction{0.0, 0.0};
  bool minus_is_state = false;
  bool degenerate_pair = false;  // λ+ ≈ λ− (impossible for positive inputs)
};

ClosedForm2x2 closed_form_2x2_diagonal(double a, double b, double c, double d);

// Matrix of the homogeneous channel ρ ↦ Σ V_iρV_i† under column-major
// vectorisation: Σ conj(V_i) ⊗ V_i, acting on vec(ρ).
ComplexMatrix superoperator_matrix(const KrausFamily& dynamics);

}  // namespace qifs
