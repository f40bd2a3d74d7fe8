#pragma once

#include "qifs/density_matrix.hpp"

namespace qifs {

// Hilbert–Schmidt distance: sqrt(tr[(ρ−σ)²]).
double distance_hs(const DensityMatrix& a, const DensityMatrix& b);

// Trace distance as the sum of absolute eigenvalues of ρ−σ.
double distance_trace(const DensityMatrix& a, const DensityMatrix& b);

// Bures-style distance: sqrt(2·(1 − tr[(ρ^{1/2} σ ρ^{1/2})^{1/2}])).
double distance_bures(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qifs
