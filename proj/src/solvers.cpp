#include "qifs/solvers.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qifs/distances.hpp"
#include "qifs/errors.hpp"

namespace qifs {

namespace {

DensityMatrix seed_or_mixed(const SolveConfig& cfg, int dim) {
  if (cfg.seed_state) {
    if (cfg.seed_state->dim() != dim)
      throw Error(ErrorCode::BadInput, "seed state dimension mismatch");
    return *cfg.seed_state;
  }
  return DensityMatrix::maximally_mixed(dim);
}

ComplexMatrix raw_ruelle(const KrausFamily& potential, const KrausFamily& dynamics,
                         const ComplexMatrix& x) {
  ComplexMatrix acc(dynamics.dim());
  for (int i = 0; i < dynamics.arity(); ++i) {
    const ComplexMatrix& h = potential.op(i);
    const ComplexMatrix& v = dynamics.op(i);
    const double weight = (h * x * h.adjoint()).trace().real();
    if (weight == 0.0) continue;
    acc += Complex(weight, 0.0) * (v * x * v.adjoint());
  }
  return hermitize(acc);
}

// One normalized power iteration run for the (possibly smoothed) transfer
// map. smoothing = 0 means the direct map.
struct IterationOutcome {
  DensityMatrix state;
  long iterations = 0;
  bool converged = false;
};

IterationOutcome iterate_transfer(const KrausFamily& potential, const KrausFamily& dynamics,
                                  DensityMatrix x, double smoothing, const SolveConfig& cfg) {
  IterationOutcome out;
  const int n = dynamics.dim();
  for (long iter = 1; iter <= cfg.max_iter; ++iter) {
    ComplexMatrix arg = x.mat();
    if (smoothing > 0.0) {
      ComplexMatrix eye = ComplexMatrix::identity(n);
      eye *= Complex(smoothing, 0.0);
      arg += eye;
    }
    ComplexMatrix y = raw_ruelle(potential, dynamics, arg);
    const double t = y.trace().real();
    if (!(t > kBranchFloor) || !y.is_finite())
      throw Error(ErrorCode::ZeroImage,
                  "transfer operator produced a vanishing image at iteration " +
                      std::to_string(iter));
    DensityMatrix next = DensityMatrix::trusted(y);
    const double step = distance_hs(next, x);
    x = std::move(next);
    out.iterations = iter;
    if (step <= cfg.tol) {
      out.converged = true;
      break;
    }
  }
  out.state = std::move(x);
  return out;
}

EigenResult finish_eigen(const KrausFamily& potential, const KrausFamily& dynamics,
                         const IterationOutcome& run) {
  EigenResult res;
  res.rho_beta = run.state;
  res.iterations = run.iterations;
  ComplexMatrix image = raw_ruelle(potential, dynamics, run.state.mat());
  res.beta = image.trace().real();
  if (!(res.beta > 0.0))
    throw Error(ErrorCode::ZeroImage, "eigenvalue estimate is not positive");
  res.residual = distance_hs(DensityMatrix::trusted(image), run.state);
  return res;
}

}  // namespace

FixedPointResult solve_lambda_fixed_point(const QifsModel& m, const SolveConfig& cfg) {
  DensityMatrix rho = seed_or_mixed(cfg, m.dim());
  double step = std::numeric_limits<double>::infinity();
  for (long iter = 1; iter <= cfg.max_iter; ++iter) {
    DensityMatrix next = lambda_apply(m, rho);
    step = distance_hs(next, rho);
    rho = std::move(next);
    if (step <= cfg.tol) {
      FixedPointResult out;
      out.state = std::move(rho);
      out.iterations = iter;
      out.residual = distance_hs(lambda_apply(m, out.state), out.state);
      return out;
    }
  }
  throw Error(ErrorCode::NonConvergence,
              "fixed-point iteration exhausted " + std::to_string(cfg.max_iter) +
                  " steps (last step " + std::to_string(step) + ")");
}

ComplexMatrix ruelle_apply(const KrausFamily& potential, const KrausFamily& dynamics,
                           const DensityMatrix& rho) {
  if (potential.arity() != dynamics.arity())
    throw Error(ErrorCode::BadInput, "potential and dynamics arities differ");
  if (potential.dim() != dynamics.dim() || dynamics.dim() != rho.dim())
    throw Error(ErrorCode::BadInput, "dimension mismatch in transfer operator");
  return raw_ruelle(potential, dynamics, rho.mat());
}

EigenResult solve_ruelle_eigen(const KrausFamily& potential, const KrausFamily& dynamics,
                               const SolveConfig& cfg) {
  if (potential.arity() != dynamics.arity())
    throw Error(ErrorCode::BadInput, "potential and dynamics arities differ");
  if (potential.dim() != dynamics.dim())
    throw Error(ErrorCode::BadInput, "potential and dynamics dimensions differ");

  const DensityMatrix seed = seed_or_mixed(cfg, dynamics.dim());

  try {
    IterationOutcome direct = iterate_transfer(potential, dynamics, seed, 0.0, cfg);
    if (direct.converged) return finish_eigen(potential, dynamics, direct);
    throw Error(ErrorCode::NonConvergence,
                "transfer eigen iteration exhausted " + std::to_string(cfg.max_iter) + " steps");
  } catch (const Error& first_failure) {
    if (cfg.regularization_n0 <= 0) throw;
    if (first_failure.code() != ErrorCode::ZeroImage &&
        first_failure.code() != ErrorCode::NonConvergence)
      throw;

    // Smoothed ladder: solve progressively weaker regularizations, warm-
    // starting each from the previous solution, then polish the direct map.
    DensityMatrix x = seed;
    for (int mult : {1, 2, 4, 8}) {
      const double n = static_cast<double>(cfg.regularization_n0) * mult;
      IterationOutcome rung = iterate_transfer(potential, dynamics, x, 1.0 / n, cfg);
      x = rung.state;
    }
    IterationOutcome polish = iterate_transfer(potential, dynamics, x, 0.0, cfg);
    if (!polish.converged)
      throw Error(ErrorCode::NonConvergence,
                  "regularized ladder did not rescue the direct iteration");
    return finish_eigen(potential, dynamics, polish);
  }
}

ClosedForm2x2 closed_form_2x2_diagonal(double a, double b, double c, double d) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0 && d > 0.0))
    throw Error(ErrorCode::BadInput, "closed form requires strictly positive coefficients");

  ClosedForm2x2 out;
  out.zeta = std::sqrt((d - a) * (d - a) + 4.0 * b * c);
  out.lambda_plus = 0.5 * (a + d) + 0.5 * out.zeta;
  out.lambda_minus = 0.5 * (a + d) - 0.5 * out.zeta;
  out.degenerate_pair = out.zeta <= 1e-14 * std::max(std::abs(a), std::abs(d));

  const double top = a - d + out.zeta;  // ≥ 0 since ζ ≥ |d − a|
  out.rho_plus = DensityMatrix::diagonal({top / (top + 2.0 * c), 2.0 * c / (top + 2.0 * c)});

  // Subdominant direction from the second row: c·x + (d − λ−)·y = 0.
  const double y = -2.0 * c / (d - a + out.zeta);
  const double scale = 1.0 + std::abs(y);
  out.minus_direction = {1.0 / scale, y / scale};
  out.minus_is_state = y >= 0.0;  // mixed signs for positive inputs, so false
  return out;
}

ComplexMatrix superoperator_matrix(const KrausFamily& dynamics) {
  const int n = dynamics.dim();
  ComplexMatrix acc(n * n);
  for (const auto& v : dynamics.ops()) acc += kron(v.conjugate(), v);
  return acc;
}

}  // namespace qifs
