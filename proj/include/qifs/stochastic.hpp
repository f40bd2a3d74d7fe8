#pragma once

#include <vector>

#include "qifs/rng.hpp"

namespace qifs {

// Column-stochastic real matrix: entries >= 0, every column sums to one.
// Stored row-major; p(i, j) is the weight of a transition j -> i under the
// column convention (P acts on probability column vectors from the left).
class StochasticMatrix {
 public:
  StochasticMatrix(int dim, std::vector<double> entries,
                   double column_tol = 1e-12);

  static StochasticMatrix uniform(int dim);

  int dim() const { return dim_; }
  double p(int r, int c) const { return entries_[static_cast<std::size_t>(r) * dim_ + c]; }
  const std::vector<double>& entries() const { return entries_; }

  StochasticMatrix multiply(const StochasticMatrix& other) const;
  StochasticMatrix power(int n) const;  // n >= 1

  // True when (I+P)^dim is entrywise positive, i.e. every state reaches
  // every other state (period-insensitive test).
  bool is_irreducible() const;

  bool entries_positive(double floor = 0.0) const;

 private:
  int dim_;
  std::vector<double> entries_;
};

// Left fixed probability vector: P π = π, entries >= 0, Σ π_i = 1. Computed
// by power iteration on (I+P)/2, which is aperiodic even when P is periodic.
// For dim == 2 the closed form π = (p01, 1 − p00)/(p01 − p00 + 1) is used as
// a cross-check and returned. Throws Reducible when P is not irreducible.
std::vector<double> stationary_vector(const StochasticMatrix& p);

// The dim == 2 closed form above; requires an irreducible 2×2 input.
std::vector<double> stationary_closed_form_2x2(const StochasticMatrix& p);

// Rank-one column-stochastic matrix with every column equal to the
// stationary vector of P (the limit of P^n for aperiodic P).
StochasticMatrix stationary_limit_matrix(const StochasticMatrix& p);

// Random column-stochastic matrix with columns drawn uniformly from the
// simplex; min_entry > 0 bounds every entry away from zero.
StochasticMatrix random_column_stochastic(int dim, SplitRng& rng,
                                          double min_entry = 0.0);

}  // namespace qifs
