#pragma once

#include <cstdint>
#include <vector>

#include "qifs/density_matrix.hpp"
#include "qifs/kraus.hpp"

namespace qifs {

// One realization of the state-space Markov chain: at each step a branch i is
// drawn with probability p_i(ρ_t) and the state moves to the normalized
// branch image F_i(ρ_t).
struct Trajectory {
  std::vector<DensityMatrix> states;  // length steps + 1; states[0] is the start
  std::vector<int> branches;          // length steps; branches[t] produced states[t+1]
  std::uint64_t seed = 0;
};

// Uniformly weighted sample of density matrices.
struct EmpiricalMeasure {
  std::vector<DensityMatrix> samples;
};

// Entrywise average of the samples, hermitized and trace-renormalized.
DensityMatrix barycenter(const EmpiricalMeasure& measure);

struct SimConfig {
  int burn_in = 1000;     // leading steps discarded from every chain
  int samples = 100000;   // recorded states in total, split across chains
  std::uint64_t seed = 0;
  int chains = 1;         // independent trajectories (stream c of the seed)
  int batches = 50;       // batch-means groups per chain for the error bar
  DensityMatrix initial;  // start state; default (dim 0) → maximally mixed
};

// Time average of the post-burn-in states. The error bar is the batch-means
// standard error of the mean, measured in Hilbert–Schmidt norm; batches are
// pooled across chains, so multi-chain runs also capture seed-to-seed spread.
struct BarycenterEstimate {
  DensityMatrix state;
  double std_error = 0.0;
  long long samples_used = 0;
};

struct ScalarEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long samples_used = 0;
};

// Samples `steps` transitions starting from rho0. Deterministic in (seed);
// raises DegenerateBranch if a drawn branch has a vanishing image.
Trajectory sample_trajectory(const QifsModel& m, const DensityMatrix& rho0,
                             int steps, std::uint64_t seed);

// Estimates the barycenter ∫ρ dμ of the chain's invariant measure by the
// trajectory time average. Requires cfg.samples ≥ 100.
BarycenterEstimate estimate_barycenter(const QifsModel& m,
                                       const SimConfig& cfg = {});

// Estimates ∫ h dμ where h(ρ) is the Shannon entropy of the branch
// probabilities at ρ. Requires cfg.samples ≥ 100.
ScalarEstimate estimate_entropy_integral(const QifsModel& m,
                                         const SimConfig& cfg = {});

// Max observed trace-distance ratio D1(F_i(ρ), F_i(σ))/D1(ρ, σ) per branch
// over `pairs` random full-rank state pairs (pairs ≥ 10). Diagnostic only: a
// ratio below 1 on samples is evidence of contractivity, not proof. Pairs on
// which a branch image degenerates are skipped for that branch.
std::vector<double> empirical_contraction(const QifsModel& m, int pairs,
                                          std::uint64_t seed);

}  // namespace qifs
