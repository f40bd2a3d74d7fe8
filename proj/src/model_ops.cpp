#include "qifs/model_ops.hpp"

#include <algorithm>
#include <string>

#include "qifs/entropy.hpp"
#include "qifs/errors.hpp"

namespace qifs {

namespace {

void check_dim(const QifsModel& m, const DensityMatrix& rho) {
  if (m.dim() != rho.dim())
    throw Error(ErrorCode::BadInput, "state dimension does not match the model");
}

}  // namespace

double branch_prob(const QifsModel& m, int i, const DensityMatrix& rho) {
  check_dim(m, rho);
  const ComplexMatrix& w = m.weights.op(i);
  double p = (w * rho.mat() * w.adjoint()).trace().real();
  return std::clamp(p, 0.0, 1.0);
}

std::vector<double> branch_probabilities(const QifsModel& m, const DensityMatrix& rho) {
  std::vector<double> p(static_cast<size_t>(m.arity()));
  for (int i = 0; i < m.arity(); ++i) p[static_cast<size_t>(i)] = branch_prob(m, i, rho);
  return p;
}

DensityMatrix branch_map(const QifsModel& m, int i, const DensityMatrix& rho) {
  check_dim(m, rho);
  const ComplexMatrix& v = m.dynamics.op(i);
  ComplexMatrix image = v * rho.mat() * v.adjoint();
  const double tr = image.trace().real();
  if (tr <= kBranchFloor)
    throw Error(ErrorCode::DegenerateBranch,
                "branch " + std::to_string(i) + " image has trace " + std::to_string(tr));
  return DensityMatrix::trusted(image);
}

DensityMatrix lambda_apply(const QifsModel& m, const DensityMatrix& rho) {
  check_dim(m, rho);
  ComplexMatrix acc(m.dim());
  for (int i = 0; i < m.arity(); ++i) {
    const double p = branch_prob(m, i, rho);
    const ComplexMatrix& v = m.dynamics.op(i);
    ComplexMatrix image = v * rho.mat() * v.adjoint();
    const double tr = image.trace().real();
    if (tr <= kBranchFloor) {
      if (p > kBranchFloor)
        throw Error(ErrorCode::DegenerateBranch,
                    "branch " + std::to_string(i) + " has weight " + std::to_string(p) +
                        " but a vanishing image");
      continue;  // negligible weight on a dead branch: drop it
    }
    acc += Complex(p / tr, 0.0) * image;
  }
  return DensityMatrix::trusted(acc);
}

DensityMatrix lambda_homogeneous(const KrausFamily& dynamics, const DensityMatrix& rho) {
  if (dynamics.dim() != rho.dim())
    throw Error(ErrorCode::BadInput, "state dimension does not match the family");
  ComplexMatrix acc(dynamics.dim());
  for (const auto& v : dynamics.ops()) acc += v * rho.mat() * v.adjoint();
  return DensityMatrix::trusted(acc);
}

Observable linear_observable(const ComplexMatrix& a) {
  return [a](const DensityMatrix& rho) { return (a * rho.mat()).trace().real(); };
}

double dual_apply(const QifsModel& m, const Observable& f, const DensityMatrix& rho) {
  check_dim(m, rho);
  double acc = 0.0;
  for (int i = 0; i < m.arity(); ++i) {
    const double p = branch_prob(m, i, rho);
    if (p <= kBranchFloor) continue;  // zero-probability branch contributes nothing
    acc += p * f(branch_map(m, i, rho));
  }
  return acc;
}

double shannon_branch_entropy(const QifsModel& m, const DensityMatrix& rho) {
  double h = 0.0;
  for (int i = 0; i < m.arity(); ++i) h += eta(branch_prob(m, i, rho));
  return h;
}

}  // namespace qifs
