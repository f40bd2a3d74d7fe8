#pragma once

#include <vector>

#include "qifs/model_ops.hpp"

namespace qifs {

// Hard ceiling on the number of words k^n an enumeration may touch.
inline constexpr double kWordEnumerationCap = 1e6;

using Word = std::vector<int>;  // branch letters, applied left to right

struct WordResult {
  double prob = 0.0;        // p_ι(ρ), the product of step probabilities
  DensityMatrix image;      // F_ι(ρ); equals the input state when prob == 0
  bool vanished = false;    // true when a step probability hit the floor
};

// Probability and image of a word: each step multiplies the branch
// probability at the current state, then moves through that branch. A step
// probability at or below the branch floor short-circuits to prob = 0 (the
// image is then just a placeholder).
WordResult word_prob_and_map(const QifsModel& m, const Word& word, const DensityMatrix& rho);

// H_n(ρ) = Σ_{|ι| = n} η(p_ι(ρ)); H_0 = 0. Throws CapExceeded when k^n
// exceeds the enumeration cap.
double partial_entropy(const QifsModel& m, const DensityMatrix& rho, int n);

// (U^n h)(ρ) = Σ_{|ι| = n} p_ι(ρ)·h(F_ι(ρ)) with h the branch Shannon
// entropy; n = 0 gives h(ρ) itself.
double iterated_dual_entropy(const QifsModel& m, const DensityMatrix& rho, int n);

// Σ_{|ι| = n} p_ι(ρ): should be 1 for a normalized model (used by checks).
double word_probability_sum(const QifsModel& m, const DensityMatrix& rho, int n);

}  // namespace qifs
