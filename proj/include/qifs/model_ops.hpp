#pragma once

#include <functional>
#include <vector>

#include "qifs/kraus.hpp"

namespace qifs {

// Probabilities below this floor are treated as exactly zero when selecting
// or weighting branches; a branch whose image trace falls below it is
// considered degenerate.
inline constexpr double kBranchFloor = 1e-12;

// p_i(ρ) = tr(W_iρW_i†), clamped into [0, 1] against round-off.
double branch_prob(const QifsModel& m, int i, const DensityMatrix& rho);

std::vector<double> branch_probabilities(const QifsModel& m, const DensityMatrix& rho);

// F_i(ρ) = V_iρV_i† / tr(V_iρV_i†). Throws DegenerateBranch when the image
// trace is at or below the branch floor.
DensityMatrix branch_map(const QifsModel& m, int i, const DensityMatrix& rho);

// Λ(ρ) = Σ_i p_i(ρ)·F_i(ρ). Branches with negligible probability AND a
// degenerate image are dropped; a degenerate image carrying real probability
// is an error (the model would lose mass).
DensityMatrix lambda_apply(const QifsModel& m, const DensityMatrix& rho);

// Homogeneous (linear) channel Σ V_iρV_i† for a normalized family.
DensityMatrix lambda_homogeneous(const KrausFamily& dynamics, const DensityMatrix& rho);

using Observable = std::function<double(const DensityMatrix&)>;

Observable linear_observable(const ComplexMatrix& a);  // ρ ↦ Re tr(a·ρ)

// Transfer/dual operator: (Uf)(ρ) = Σ_i p_i(ρ)·f(F_i(ρ)), same branch-drop
// rule as lambda_apply.
double dual_apply(const QifsModel& m, const Observable& f, const DensityMatrix& rho);

// Shannon entropy of the branch distribution at ρ: h(ρ) = Σ_i η(p_i(ρ)).
double shannon_branch_entropy(const QifsModel& m, const DensityMatrix& rho);

}  // namespace qifs
