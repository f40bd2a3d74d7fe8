#pragma once

#include <cstdint>
#include <vector>

#include "qifs/complex_matrix.hpp"
#include "qifs/density_matrix.hpp"
#include "qifs/kraus.hpp"

namespace qifs {

// Counter-based splittable generator (splitmix64 finalizer over an additive
// counter). A stream is addressed by (seed, stream id), so parallel sweeps
// can hand stream i to worker i and stay reproducible regardless of
// scheduling. All draws are deterministic functions of the construction
// arguments and the number of values consumed so far.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double next_double();
  // Standard normal via Box-Muller (consumes two uniforms per call).
  double next_gaussian();
  // Uniform integer in [0, bound) for bound >= 1.
  std::uint64_t next_below(std::uint64_t bound);

  // Child generator independent of further draws from this one.
  SplitRng split(std::uint64_t child) const;

 private:
  std::uint64_t state_;
};

// Complex matrix with i.i.d. standard complex Gaussian entries.
ComplexMatrix random_gaussian_matrix(int dim, SplitRng& rng);

// Random Hermitian matrix (G + G†)/2 with G Gaussian.
ComplexMatrix random_hermitian(int dim, SplitRng& rng);

// Random density matrix GG†/tr(GG†) (Ginibre construction; full rank a.s.).
DensityMatrix random_density(int dim, SplitRng& rng);

// Random unitary: Gram-Schmidt orthonormalization of a Gaussian matrix.
ComplexMatrix random_unitary(int dim, SplitRng& rng);

// Random normalized weight family: k Gaussian dim×dim blocks stacked into a
// (k·dim)×dim matrix whose columns are orthonormalized, then read back as k
// blocks. The stacked isometry T satisfies T†T = I, i.e. Σ W_i†W_i = I up to
// rounding.
KrausFamily random_normalized_family(int arity, int dim, SplitRng& rng);

// Probability vector drawn uniformly from the simplex (normalized
// exponentials), entries bounded below by min_entry after a convex pull
// toward the uniform vector when min_entry > 0.
std::vector<double> random_probability_vector(int dim, SplitRng& rng,
                                              double min_entry = 0.0);

}  // namespace qifs
