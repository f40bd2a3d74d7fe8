#pragma once

#include "qifs/density_matrix.hpp"

namespace qifs {

// η(x) = −x·ln x with η(0) = 0, the building block of every entropy here.
// Natural logarithm throughout the library. Negative input is a domain error.
double eta(double x);

// Shannon entropy of a probability vector (entries clamped at 0 within eps).
double shannon_entropy(const std::vector<double>& probs);

// S(ρ) = −tr(ρ ln ρ) computed from the spectrum; eigenvalues are clamped to
// [0, 1] before η to absorb round-off.
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace qifs
