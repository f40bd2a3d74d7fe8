#include "qifs/sim.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "qifs/distances.hpp"
#include "qifs/errors.hpp"
#include "qifs/model_ops.hpp"
#include "qifs/rng.hpp"

namespace qifs {
namespace {

double frobenius(const ComplexMatrix& m) {
  double sum = 0.0;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) sum += std::norm(m(r, c));
  return std::sqrt(sum);
}

int draw_branch(const QifsModel& m, const DensityMatrix& rho, SplitRng& rng) {
  const std::vector<double> probs = branch_probabilities(m, rho);
  double total = 0.0;
  for (double p : probs) total += p;
  if (total <= kBranchFloor)
    throw Error(ErrorCode::DegenerateBranch,
                "all branch probabilities vanish at the current state");
  const double u = rng.next_double() * total;
  double cum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return static_cast<int>(i);
  }
  // Round-off left u just past the cumulative sum; take the last live branch.
  for (std::size_t i = probs.size(); i-- > 0;)
    if (probs[i] > 0.0) return static_cast<int>(i);
  return static_cast<int>(probs.size()) - 1;
}

void check_estimator_config(const SimConfig& cfg) {
  if (cfg.samples < 100)
    throw Error(ErrorCode::BadInput, "estimator needs at least 100 samples");
  if (cfg.burn_in < 0)
    throw Error(ErrorCode::BadInput, "burn-in must be non-negative");
  if (cfg.chains < 1)
    throw Error(ErrorCode::BadInput, "need at least one chain");
  if (cfg.batches < 2)
    throw Error(ErrorCode::BadInput, "batch-means error bar needs >= 2 batches");
}

DensityMatrix start_state(const QifsModel& m, const SimConfig& cfg) {
  if (cfg.initial.dim() == 0) return DensityMatrix::maximally_mixed(m.dim());
  if (cfg.initial.dim() != m.dim())
    throw Error(ErrorCode::BadInput, "initial state dimension mismatch");
  return cfg.initial;
}

struct BatchLayout {
  long long per_chain = 0;   // recorded states per chain (equal-size batches)
  long long batch_size = 0;  // states per batch
  int batches = 0;           // batches per chain
};

BatchLayout plan_batches(const SimConfig& cfg) {
  BatchLayout layout;
  layout.per_chain = cfg.samples / cfg.chains;
  if (layout.per_chain < 2)
    throw Error(ErrorCode::BadInput, "fewer than two samples per chain");
  layout.batches = cfg.batches;
  if (layout.batches > layout.per_chain)
    layout.batches = static_cast<int>(layout.per_chain);
  layout.batch_size = layout.per_chain / layout.batches;
  layout.per_chain = layout.batch_size * layout.batches;
  return layout;
}

// Runs one chain: burn_in discarded transitions, then `keep` recorded states
// passed to the sink in trajectory order.
template <typename Sink>
void run_chain(const QifsModel& m, const DensityMatrix& start, int burn_in,
               long long keep, SplitRng& rng, Sink&& sink) {
  DensityMatrix current = start;
  for (int s = 0; s < burn_in; ++s)
    current = branch_map(m, draw_branch(m, current, rng), current);
  for (long long s = 0; s < keep; ++s) {
    sink(current);
    if (s + 1 < keep)
      current = branch_map(m, draw_branch(m, current, rng), current);
  }
}

}  // namespace

DensityMatrix barycenter(const EmpiricalMeasure& measure) {
  if (measure.samples.empty())
    throw Error(ErrorCode::BadInput, "empirical measure has no samples");
  const int dim = measure.samples.front().dim();
  ComplexMatrix sum(dim);
  for (const DensityMatrix& rho : measure.samples) {
    if (rho.dim() != dim)
      throw Error(ErrorCode::BadInput, "samples have mixed dimensions");
    sum += rho.mat();
  }
  return DensityMatrix::trusted(sum);
}

Trajectory sample_trajectory(const QifsModel& m, const DensityMatrix& rho0,
                             int steps, std::uint64_t seed) {
  if (steps < 1)
    throw Error(ErrorCode::BadInput, "trajectory needs at least one step");
  Trajectory t;
  t.seed = seed;
  t.states.reserve(static_cast<std::size_t>(steps) + 1);
  t.branches.reserve(static_cast<std::size_t>(steps));
  t.states.push_back(rho0);
  SplitRng rng(seed);
  for (int s = 0; s < steps; ++s) {
    const int i = draw_branch(m, t.states.back(), rng);
    t.branches.push_back(i);
    t.states.push_back(branch_map(m, i, t.states.back()));
  }
  return t;
}

BarycenterEstimate estimate_barycenter(const QifsModel& m,
                                       const SimConfig& cfg) {
  check_estimator_config(cfg);
  const DensityMatrix start = start_state(m, cfg);
  const BatchLayout layout = plan_batches(cfg);
  const int dim = m.dim();

  std::vector<ComplexMatrix> batch_means;
  batch_means.reserve(static_cast<std::size_t>(layout.batches) * cfg.chains);
  for (int c = 0; c < cfg.chains; ++c) {
    SplitRng rng(cfg.seed, static_cast<std::uint64_t>(c));
    ComplexMatrix batch_sum(dim);
    long long in_batch = 0;
    run_chain(m, start, cfg.burn_in, layout.per_chain, rng,
              [&](const DensityMatrix& rho) {
                batch_sum += rho.mat();
                if (++in_batch == layout.batch_size) {
                  batch_means.push_back(
                      (1.0 / static_cast<double>(layout.batch_size)) * batch_sum);
                  batch_sum = ComplexMatrix(dim);
                  in_batch = 0;
                }
              });
  }

  // Work with deviations from the first batch mean: avoids cancellation and
  // keeps a constant trajectory at exactly zero variance.
  const double nb = static_cast<double>(batch_means.size());
  ComplexMatrix shift_mean(dim);
  for (const ComplexMatrix& b : batch_means) shift_mean += b - batch_means.front();
  shift_mean = (1.0 / nb) * shift_mean;
  const ComplexMatrix mean = batch_means.front() + shift_mean;

  double var = 0.0;
  for (const ComplexMatrix& b : batch_means) {
    const double d = frobenius((b - batch_means.front()) - shift_mean);
    var += d * d;
  }

  BarycenterEstimate out;
  out.state = DensityMatrix::trusted(mean);
  out.std_error = nb > 1.0 ? std::sqrt(var / ((nb - 1.0) * nb)) : 0.0;
  out.samples_used = layout.per_chain * cfg.chains;
  return out;
}

ScalarEstimate estimate_entropy_integral(const QifsModel& m,
                                         const SimConfig& cfg) {
  check_estimator_config(cfg);
  const DensityMatrix start = start_state(m, cfg);
  const BatchLayout layout = plan_batches(cfg);

  std::vector<double> batch_means;
  batch_means.reserve(static_cast<std::size_t>(layout.batches) * cfg.chains);
  for (int c = 0; c < cfg.chains; ++c) {
    SplitRng rng(cfg.seed, static_cast<std::uint64_t>(c));
    double batch_sum = 0.0;
    long long in_batch = 0;
    run_chain(m, start, cfg.burn_in, layout.per_chain, rng,
              [&](const DensityMatrix& rho) {
                batch_sum += shannon_branch_entropy(m, rho);
                if (++in_batch == layout.batch_size) {
                  batch_means.push_back(batch_sum /
                                        static_cast<double>(layout.batch_size));
                  batch_sum = 0.0;
                  in_batch = 0;
                }
              });
  }

  const double nb = static_cast<double>(batch_means.size());
  double shift_mean = 0.0;
  for (double b : batch_means) shift_mean += b - batch_means.front();
  shift_mean /= nb;
  const double mean = batch_means.front() + shift_mean;
  double var = 0.0;
  for (double b : batch_means) {
    const double d = (b - batch_means.front()) - shift_mean;
    var += d * d;
  }

  ScalarEstimate out;
  out.value = mean;
  out.std_error = nb > 1.0 ? std::sqrt(var / ((nb - 1.0) * nb)) : 0.0;
  out.samples_used = layout.per_chain * cfg.chains;
  return out;
}

std::vector<double> empirical_contraction(const QifsModel& m, int pairs,
                                          std::uint64_t seed) {
  if (pairs < 10)
    throw Error(ErrorCode::BadInput, "need at least 10 sample pairs");
  const int k = m.arity();
  const int dim = m.dim();
  SplitRng rng(seed);
  std::vector<double> ratios(static_cast<std::size_t>(k), 0.0);
  for (int p = 0; p < pairs; ++p) {
    const DensityMatrix rho = random_density(dim, rng);
    const DensityMatrix sigma = random_density(dim, rng);
    const double base = distance_trace(rho, sigma);
    if (base <= 1e-14) continue;
    for (int i = 0; i < k; ++i) {
      const ComplexMatrix& v = m.dynamics.op(i);
      const ComplexMatrix image_rho = v * rho.mat() * v.adjoint();
      const ComplexMatrix image_sigma = v * sigma.mat() * v.adjoint();
      if (image_rho.trace().real() <= kBranchFloor ||
          image_sigma.trace().real() <= kBranchFloor)
        continue;
      const double moved = distance_trace(DensityMatrix::trusted(image_rho),
                                          DensityMatrix::trusted(image_sigma));
      const double ratio = moved / base;
      if (ratio > ratios[static_cast<std::size_t>(i)])
        ratios[static_cast<std::size_t>(i)] = ratio;
    }
  }
  return ratios;
}

}  // namespace qifs
