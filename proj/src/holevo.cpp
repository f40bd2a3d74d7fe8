#include "qifs/holevo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "qifs/distances.hpp"
#include "qifs/entropy.hpp"
#include "qifs/errors.hpp"
#include "qifs/hermitian_eigen.hpp"
#include "qifs/model_ops.hpp"
#include "qifs/thermo.hpp"

namespace qifs {

Ensemble Ensemble::make(std::vector<DensityMatrix> states, std::vector<double> probs) {
  if (states.empty() || states.size() != probs.size()) {
    throw Error(ErrorCode::BadInput,
                "an ensemble needs one probability per state, at least one state");
  }
  const int dim = states.front().mat().dim();
  double total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].mat().dim() != dim) {
      throw Error(ErrorCode::BadInput, "ensemble states must share one dimension");
    }
    if (!std::isfinite(probs[i]) || probs[i] < -1e-12) {
      throw Error(ErrorCode::BadInput, "ensemble probabilities must be nonnegative");
    }
    probs[i] = std::max(0.0, probs[i]);
    total += probs[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    char msg[96];
    std::snprintf(msg, sizeof(msg), "ensemble probabilities sum to %.15g, not 1", total);
    throw Error(ErrorCode::BadInput, msg);
  }
  Ensemble e;
  e.states = std::move(states);
  e.probs = std::move(probs);
  return e;
}

int Ensemble::dim() const { return states.front().mat().dim(); }

DensityMatrix average_state(const Ensemble& e) {
  ComplexMatrix sum(e.dim());
  for (int i = 0; i < e.size(); ++i) {
    sum = sum + e.probs[static_cast<std::size_t>(i)] * e.states[static_cast<std::size_t>(i)].mat();
  }
  return DensityMatrix::trusted(hermitize(sum));
}

double holevo_information(const Ensemble& e) {
  double conditional = 0.0;
  for (int i = 0; i < e.size(); ++i) {
    const double p = e.probs[static_cast<std::size_t>(i)];
    if (p <= 0.0) continue;
    conditional += p * von_neumann_entropy(e.states[static_cast<std::size_t>(i)]);
  }
  return von_neumann_entropy(average_state(e)) - conditional;
}

Ensemble induced_ensemble(const QifsModel& m, const DensityMatrix& rho_w,
                          double fixed_point_tol) {
  const double residual = distance_hs(lambda_apply(m, rho_w), rho_w);
  if (residual > fixed_point_tol) {
    char msg[128];
    std::snprintf(msg, sizeof(msg),
                  "the induced ensemble needs the solved fixed point: residual "
                  "%.3e > %.3e",
                  residual, fixed_point_tol);
    throw Error(ErrorCode::PreconditionUnmet, msg);
  }
  const int k = m.arity();
  const std::vector<std::vector<double>> a = branch_transition_matrix(m, rho_w);
  std::vector<double> probs = branch_probabilities(m, rho_w);

  // Branch probabilities sum to one only up to round-off; the ensemble
  // invariant wants it exact.
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;

  std::vector<DensityMatrix> states;
  states.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    double row_sum = 0.0;
    for (double v : a[static_cast<std::size_t>(i)]) row_sum += v;
    if (row_sum <= kBranchFloor) {
      // Mass-free degenerate branch: placeholder label state at probability 0.
      states.push_back(DensityMatrix::maximally_mixed(k));
      continue;
    }
    std::vector<double> row = a[static_cast<std::size_t>(i)];
    for (double& v : row) v /= row_sum;
    states.push_back(DensityMatrix::diagonal(row));
  }
  return Ensemble::make(std::move(states), std::move(probs));
}

Povm::Povm(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw Error(ErrorCode::BadInput, "a measurement needs at least one element");
  }
  const int dim = elements_.front().dim();
  ComplexMatrix sum(dim);
  for (const ComplexMatrix& el : elements_) {
    if (el.dim() != dim) {
      throw Error(ErrorCode::BadInput, "measurement elements must share one dimension");
    }
    if (hermiticity_defect(el) > 1e-10) {
      throw Error(ErrorCode::BadInput, "measurement elements must be Hermitian");
    }
    if (min_eigenvalue(el) < -1e-10) {
      throw Error(ErrorCode::BadInput, "measurement elements must be positive semidefinite");
    }
    sum = sum + el;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(dim)) > 1e-10) {
    throw Error(ErrorCode::NotNormalized, "measurement elements must sum to the identity");
  }
}

Povm povm_from_weights(const KrausFamily& w) {
  if (!w.is_normalized()) {
    throw Error(ErrorCode::NotNormalized,
                "only a normalized weight family induces a measurement");
  }
  std::vector<ComplexMatrix> elements;
  elements.reserve(static_cast<std::size_t>(w.arity()));
  for (int i = 0; i < w.arity(); ++i) {
    elements.push_back(w.op(i).adjoint() * w.op(i));
  }
  return Povm(std::move(elements));
}

Povm lift_to_label_space(const Povm& system_povm, const QifsModel& m,
                         const DensityMatrix& rho_w) {
  if (system_povm.dim() != m.dim()) {
    throw Error(ErrorCode::BadInput,
                "the measurement must act on the model's system space");
  }
  const int k = m.arity();
  std::vector<DensityMatrix> label_images;
  label_images.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const double image_trace =
        (m.dynamics.op(j) * rho_w.mat() * m.dynamics.op(j).adjoint()).trace().real();
    label_images.push_back(image_trace > kBranchFloor
                               ? branch_map(m, j, rho_w)
                               : DensityMatrix::maximally_mixed(m.dim()));
  }
  std::vector<ComplexMatrix> probes;
  probes.reserve(static_cast<std::size_t>(system_povm.size()));
  for (int y = 0; y < system_povm.size(); ++y) {
    ComplexMatrix probe(k);
    for (int j = 0; j < k; ++j) {
      const double outcome_prob =
          (system_povm.element(y) * label_images[static_cast<std::size_t>(j)].mat())
              .trace()
              .real();
      probe(j, j) = std::max(0.0, outcome_prob);
    }
    probes.push_back(std::move(probe));
  }
  return Povm(std::move(probes));
}

std::vector<std::vector<double>> born_joint(const Ensemble& e, const Povm& povm) {
  if (povm.dim() != e.dim()) {
    throw Error(ErrorCode::BadInput,
                "the measurement and ensemble must share one dimension");
  }
  std::vector<std::vector<double>> joint(
      static_cast<std::size_t>(e.size()),
      std::vector<double>(static_cast<std::size_t>(povm.size()), 0.0));
  for (int x = 0; x < e.size(); ++x) {
    for (int y = 0; y < povm.size(); ++y) {
      const double outcome =
          (povm.element(y) * e.states[static_cast<std::size_t>(x)].mat()).trace().real();
      joint[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
          e.probs[static_cast<std::size_t>(x)] * std::max(0.0, outcome);
    }
  }
  return joint;
}

double mutual_information(const std::vector<std::vector<double>>& joint) {
  if (joint.empty() || joint.front().empty()) {
    throw Error(ErrorCode::BadInput, "the joint distribution must be nonempty");
  }
  const std::size_t cols = joint.front().size();
  std::vector<double> row_marginal(joint.size(), 0.0);
  std::vector<double> col_marginal(cols, 0.0);
  double total = 0.0;
  double joint_entropy = 0.0;
  for (std::size_t x = 0; x < joint.size(); ++x) {
    if (joint[x].size() != cols) {
      throw Error(ErrorCode::BadInput, "the joint distribution must be rectangular");
    }
    for (std::size_t y = 0; y < cols; ++y) {
      const double p = joint[x][y];
      if (!std::isfinite(p) || p < -1e-12) {
        throw Error(ErrorCode::BadInput, "joint probabilities must be nonnegative");
      }
      const double clamped = std::max(0.0, p);
      row_marginal[x] += clamped;
      col_marginal[y] += clamped;
      total += clamped;
      joint_entropy += eta(clamped);
    }
  }
  if (std::abs(total - 1.0) > 1e-10) {
    char msg[96];
    std::snprintf(msg, sizeof(msg), "joint probabilities sum to %.15g, not 1", total);
    throw Error(ErrorCode::BadInput, msg);
  }
  double hx = 0.0;
  for (double p : row_marginal) hx += eta(p);
  double hy = 0.0;
  for (double p : col_marginal) hy += eta(p);
  return std::max(0.0, hx + hy - joint_entropy);
}

}  // namespace qifs
