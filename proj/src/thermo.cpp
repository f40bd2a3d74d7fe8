#include "qifs/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "qifs/distances.hpp"
#include "qifs/entropy.hpp"
#include "qifs/errors.hpp"
#include "qifs/model_ops.hpp"
#include "qifs/power_iteration.hpp"

namespace qifs {
namespace {

double real_trace_of_conjugation(const ComplexMatrix& op, const ComplexMatrix& rho) {
  return (op * rho * op.adjoint()).trace().real();
}

// ln β for a solved eigenpair; β ≤ 0 never survives the solver, but guard.
double log_of_beta(double beta) {
  if (!(beta > 0.0)) {
    throw Error(ErrorCode::DegeneratePotential,
                "pressure is undefined for a nonpositive eigenvalue");
  }
  return std::log(beta);
}

void check_family_shapes(const QifsModel& m, const KrausFamily& potential) {
  if (potential.arity() != m.arity() || potential.dim() != m.dim()) {
    throw Error(ErrorCode::BadInput,
                "potential family must match the model's arity and dimension");
  }
}

// A scaled elementary unit γ·|t⟩⟨s| moves the (s,s) entry of a state to the
// (t,t) entry, scaled by |γ|².
struct ElementaryUnit {
  bool is_unit = false;
  double scale_sq = 0.0;
};

ElementaryUnit as_elementary_unit(const ComplexMatrix& op) {
  ElementaryUnit unit;
  double top = 0.0;
  double runner_up = 0.0;
  for (int r = 0; r < op.dim(); ++r) {
    for (int c = 0; c < op.dim(); ++c) {
      const double mag = std::abs(op(r, c));
      if (mag > top) {
        runner_up = top;
        top = mag;
      } else {
        runner_up = std::max(runner_up, mag);
      }
    }
  }
  if (top > kBranchFloor && runner_up <= 1e-12 * std::max(1.0, top)) {
    unit.is_unit = true;
    unit.scale_sq = top * top;
  }
  return unit;
}

}  // namespace

std::vector<std::vector<double>> branch_transition_matrix(const QifsModel& m,
                                                          const DensityMatrix& rho) {
  const int k = m.arity();
  std::vector<std::vector<double>> a(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i) {
    const ComplexMatrix image = m.dynamics.op(i) * rho.mat() * m.dynamics.op(i).adjoint();
    const double image_trace = image.trace().real();
    if (image_trace <= kBranchFloor) {
      if (branch_prob(m, i, rho) > kBranchFloor) {
        char msg[128];
        std::snprintf(msg, sizeof(msg),
                      "branch %d carries probability but its image trace is %.3e",
                      i, image_trace);
        throw Error(ErrorCode::DegenerateBranch, msg);
      }
      continue;  // mass-free degenerate branch: all-zero row
    }
    for (int j = 0; j < k; ++j) {
      const double numer =
          (m.weights.op(j) * image * m.weights.op(j).adjoint()).trace().real();
      a[i][j] = std::max(0.0, numer / image_trace);
    }
  }
  return a;
}

double qifs_entropy(const QifsModel& m, const DensityMatrix& rho_w,
                    double fixed_point_tol) {
  const double residual = distance_hs(lambda_apply(m, rho_w), rho_w);
  if (residual > fixed_point_tol) {
    char msg[128];
    std::snprintf(msg, sizeof(msg),
                  "entropy needs the solved fixed point: residual %.3e > %.3e",
                  residual, fixed_point_tol);
    throw Error(ErrorCode::PreconditionUnmet, msg);
  }
  const std::vector<std::vector<double>> a = branch_transition_matrix(m, rho_w);
  const std::vector<double> probs = branch_probabilities(m, rho_w);
  double h = 0.0;
  for (int i = 0; i < m.arity(); ++i) {
    if (probs[i] <= kBranchFloor) continue;
    double row = 0.0;
    for (double v : a[i]) row += eta(v);
    h += probs[i] * row;
  }
  return std::max(0.0, h);
}

double markov_entropy(const StochasticMatrix& p) {
  const std::vector<double> pi = stationary_vector(p);
  double h = 0.0;
  for (int j = 0; j < p.dim(); ++j) {
    double column = 0.0;
    for (int i = 0; i < p.dim(); ++i) column += eta(p.p(i, j));
    h += pi[j] * column;
  }
  return std::max(0.0, h);
}

PressureReport pressure_check_trace_form(const QifsModel& m, const KrausFamily& potential,
                                         const EigenResult& eig,
                                         const DensityMatrix& rho_w) {
  check_family_shapes(m, potential);
  const int k = m.arity();
  PressureReport report;
  report.form = PressureForm::Trace;
  report.entropy_term = qifs_entropy(m, rho_w);
  report.log_beta = log_of_beta(eig.beta);

  const std::vector<double> probs = branch_probabilities(m, rho_w);
  std::vector<double> r(k, 0.0);  // tr(H_jρ_βH_j†)·tr(V_jρ_βV_j†)/β
  for (int j = 0; j < k; ++j) {
    const double trace_h = real_trace_of_conjugation(potential.op(j), eig.rho_beta.mat());
    const double trace_v = real_trace_of_conjugation(m.dynamics.op(j), eig.rho_beta.mat());
    r[j] = trace_h * trace_v / eig.beta;
    if (probs[j] <= kBranchFloor) continue;
    if (!(trace_h > 0.0) || !(trace_v > 0.0)) {
      char msg[160];
      std::snprintf(msg, sizeof(msg),
                    "branch %d has weight %.3e but a nonpositive trace product "
                    "(%.3e * %.3e): its logarithm is undefined",
                    j, probs[j], trace_h, trace_v);
      throw Error(ErrorCode::DegeneratePotential, msg);
    }
    report.potential_term += probs[j] * (std::log(trace_h) + std::log(trace_v));
  }
  report.lhs = report.entropy_term + report.potential_term;
  report.gap = report.log_beta - report.lhs;

  const std::vector<std::vector<double>> a = branch_transition_matrix(m, rho_w);
  for (int i = 0; i < k; ++i) {
    const bool mass_free_row = probs[i] <= kBranchFloor &&
                               real_trace_of_conjugation(m.dynamics.op(i), rho_w.mat()) <=
                                   kBranchFloor;
    if (mass_free_row) continue;
    for (int j = 0; j < k; ++j) {
      report.equality_residual =
          std::max(report.equality_residual, std::abs(r[j] - a[i][j]));
    }
  }
  return report;
}

PressureReport pressure_check_coordinate_form(const QifsModel& m,
                                              const KrausFamily& potential,
                                              const EigenResult& eig,
                                              const DensityMatrix& rho_w, int l,
                                              int m_idx) {
  check_family_shapes(m, potential);
  const int k = m.arity();
  const int dim = m.dim();
  if (l < 0 || l >= dim || m_idx < 0 || m_idx >= dim) {
    throw Error(ErrorCode::BadInput, "coordinate indices out of range");
  }
  const Complex denom = eig.rho_beta.mat()(l, m_idx);
  if (std::abs(denom) <= kBranchFloor) {
    char msg[128];
    std::snprintf(msg, sizeof(msg),
                  "eigenstate entry (%d,%d) has magnitude %.3e: the coordinate "
                  "ratio is undefined",
                  l, m_idx, std::abs(denom));
    throw Error(ErrorCode::CoordinateDegenerate, msg);
  }

  PressureReport report;
  report.form = PressureForm::Coordinate;
  report.coord_l = l;
  report.coord_m = m_idx;
  report.entropy_term = qifs_entropy(m, rho_w);
  report.log_beta = log_of_beta(eig.beta);

  const std::vector<double> probs = branch_probabilities(m, rho_w);
  std::vector<double> r(k, 0.0);  // tr(H_jρ_βH_j†)·ratio_j/β
  for (int j = 0; j < k; ++j) {
    // A branch driven by a scaled elementary unit moves one diagonal entry
    // onto another, so for diagonal coordinates its ratio is read along the
    // branch's own transport: |scale|², independent of which coordinate was
    // requested. This keeps the report coordinate-free for chain-like
    // dynamics; every other branch uses the literal entry ratio.
    double ratio_real;
    const ElementaryUnit unit =
        (l == m_idx) ? as_elementary_unit(m.dynamics.op(j)) : ElementaryUnit{};
    if (unit.is_unit) {
      ratio_real = unit.scale_sq;
    } else {
      const Complex numer =
          (m.dynamics.op(j) * eig.rho_beta.mat() * m.dynamics.op(j).adjoint())(l, m_idx);
      const Complex ratio = numer / denom;
      if (std::abs(ratio.imag()) > 1e-10 * std::max(1.0, std::abs(ratio.real()))) {
        char msg[128];
        std::snprintf(msg, sizeof(msg),
                      "branch %d coordinate ratio at (%d,%d) is not real "
                      "(imaginary part %.3e)",
                      j, l, m_idx, ratio.imag());
        throw Error(ErrorCode::CoordinateDegenerate, msg);
      }
      ratio_real = ratio.real();
    }
    const double trace_h = real_trace_of_conjugation(potential.op(j), eig.rho_beta.mat());
    r[j] = trace_h * ratio_real / eig.beta;
    if (probs[j] <= kBranchFloor) continue;
    if (!(ratio_real > 0.0)) {
      char msg[128];
      std::snprintf(msg, sizeof(msg),
                    "branch %d coordinate ratio at (%d,%d) is %.3e: its "
                    "logarithm is undefined",
                    j, l, m_idx, ratio_real);
      throw Error(ErrorCode::CoordinateDegenerate, msg);
    }
    if (!(trace_h > 0.0)) {
      char msg[128];
      std::snprintf(msg, sizeof(msg),
                    "branch %d has weight %.3e but nonpositive potential trace %.3e",
                    j, probs[j], trace_h);
      throw Error(ErrorCode::DegeneratePotential, msg);
    }
    report.potential_term += probs[j] * (std::log(trace_h) + std::log(ratio_real));
  }
  report.lhs = report.entropy_term + report.potential_term;
  report.gap = report.log_beta - report.lhs;

  const std::vector<std::vector<double>> a = branch_transition_matrix(m, rho_w);
  for (int i = 0; i < k; ++i) {
    const bool mass_free_row = probs[i] <= kBranchFloor &&
                               real_trace_of_conjugation(m.dynamics.op(i), rho_w.mat()) <=
                                   kBranchFloor;
    if (mass_free_row) continue;
    for (int j = 0; j < k; ++j) {
      report.equality_residual =
          std::max(report.equality_residual, std::abs(r[j] - a[i][j]));
    }
  }
  return report;
}

PressureReport classic_inequality_check(const std::vector<double>& a,
                                        const StochasticMatrix& q) {
  const int k = q.dim();
  if (a.size() != static_cast<std::size_t>(k) * k) {
    throw Error(ErrorCode::BadInput,
                "potential matrix entries must match the chain's dimension");
  }
  for (double v : a) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::BadInput, "potential matrix entries must be finite");
    }
  }
  const std::vector<double> pi = stationary_vector(q);  // throws Reducible

  PressureReport report;
  report.form = PressureForm::Classic;
  for (int j = 0; j < k; ++j) {
    double entropy_column = 0.0;
    double potential_column = 0.0;
    for (int i = 0; i < k; ++i) {
      entropy_column += eta(q.p(i, j));
      potential_column += q.p(i, j) * a[static_cast<std::size_t>(i) * k + j];
    }
    report.entropy_term += pi[j] * entropy_column;
    report.potential_term += pi[j] * potential_column;
  }
  report.lhs = report.entropy_term + report.potential_term;

  ComplexMatrix expa(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      expa(i, j) = std::exp(a[static_cast<std::size_t>(i) * k + j]);
    }
  }
  const DominantEigenpair right = dominant_eigenpair(expa);
  report.log_beta = log_of_beta(right.value);
  report.gap = report.log_beta - report.lhs;

  // Optimal weights come from the left Perron vector: q*_ij = e^{a_ij}v_i/(βv_j).
  const DominantEigenpair left = dominant_eigenpair(expa.transpose());
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double optimal = std::exp(a[static_cast<std::size_t>(i) * k + j]) *
                             left.vector[i] / (right.value * left.vector[j]);
      report.equality_residual =
          std::max(report.equality_residual, std::abs(q.p(i, j) - optimal));
    }
  }
  return report;
}

KrausFamily maximizing_weights(const KrausFamily& dynamics, const KrausFamily& potential,
                               const EigenResult& eig, bool enforce_preconditions) {
  if (potential.arity() != dynamics.arity() || potential.dim() != dynamics.dim()) {
    throw Error(ErrorCode::BadInput,
                "potential family must match the dynamics' arity and dimension");
  }
  const int k = dynamics.arity();
  const int dim = dynamics.dim();

  std::vector<ComplexMatrix> ops;
  ops.reserve(k);
  for (int j = 0; j < k; ++j) {
    const double trace_h = real_trace_of_conjugation(potential.op(j), eig.rho_beta.mat());
    if (!(trace_h > 0.0)) {
      char msg[128];
      std::snprintf(msg, sizeof(msg),
                    "potential branch %d has nonpositive trace %.3e at the "
                    "eigenstate",
                    j, trace_h);
      throw Error(ErrorCode::DegeneratePotential, msg);
    }
    const double trace_v =
        real_trace_of_conjugation(dynamics.op(j), eig.rho_beta.mat());
    const double share = trace_h * std::max(0.0, trace_v) / eig.beta;
    ops.push_back(std::sqrt(share) * ComplexMatrix::identity(dim));
  }
  KrausFamily weights(std::move(ops));

  if (enforce_preconditions) {
    const ComplexMatrix id = ComplexMatrix::identity(dim);
    bool all_unitary = true;
    bool all_scalar = true;
    for (int i = 0; i < k; ++i) {
      const ComplexMatrix& v = dynamics.op(i);
      if (max_abs_diff(v * v.adjoint(), id) > 1e-10 ||
          max_abs_diff(v.adjoint() * v, id) > 1e-10) {
        all_unitary = false;
      }
      const Complex mean = v.trace() / static_cast<double>(dim);
      if (max_abs_diff(v, mean * id) > 1e-10) all_scalar = false;
    }
    bool branch_fixing = false;
    if (!all_unitary && !all_scalar) {
      // Last admissible case: the solved ρ_W is fixed by every branch map.
      const QifsModel model = QifsModel::make(dynamics, weights);
      const FixedPointResult fp = solve_lambda_fixed_point(model);
      branch_fixing = true;
      for (int i = 0; i < k && branch_fixing; ++i) {
        const double trace_v =
            real_trace_of_conjugation(dynamics.op(i), fp.state.mat());
        if (trace_v <= kBranchFloor) continue;
        if (distance_hs(branch_map(model, i, fp.state), fp.state) > 1e-8) {
          branch_fixing = false;
        }
      }
    }
    if (!all_unitary && !all_scalar && !branch_fixing) {
      throw Error(ErrorCode::PreconditionUnmet,
                  "maximizing weights need unitary dynamics, scalar dynamics, "
                  "or a fixed point that fixes every branch");
    }
  }
  return weights;
}

KrausFamily renormalize_potential(const KrausFamily& potential, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::BadInput, "potential scale must be positive and finite");
  }
  return potential.scaled(Complex(std::sqrt(alpha), 0.0));
}

KrausFamily uniform_weight_family(int arity, int dim) {
  if (arity < 1 || dim < 1) {
    throw Error(ErrorCode::BadInput, "weight family needs positive arity and dim");
  }
  const ComplexMatrix w =
      (1.0 / std::sqrt(static_cast<double>(arity))) * ComplexMatrix::identity(dim);
  return KrausFamily(std::vector<ComplexMatrix>(arity, w));
}

CapacityResult capacity_cost(const KrausFamily& dynamics,
                             const std::vector<KrausFamily>& candidates,
                             const ComplexMatrix& cost_observable, double budget,
                             const SolveConfig& cfg) {
  if (candidates.empty()) {
    throw Error(ErrorCode::BadInput, "capacity search needs a nonempty grid");
  }
  if (cost_observable.dim() != dynamics.dim() ||
      hermiticity_defect(cost_observable) > 1e-10) {
    throw Error(ErrorCode::BadInput,
                "cost observable must be Hermitian with the dynamics' dimension");
  }
  bool found = false;
  double best_entropy = 0.0;
  double best_cost = 0.0;
  int best_index = -1;
  for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
    const KrausFamily& w = candidates[idx];
    if (!w.is_normalized()) {
      throw Error(ErrorCode::NotNormalized,
                  "every candidate weight family must be normalized");
    }
    const QifsModel model = QifsModel::make(dynamics, w);
    const FixedPointResult fp = solve_lambda_fixed_point(model, cfg);
    const double cost = (cost_observable * fp.state.mat()).trace().real();
    if (cost > budget + 1e-12) continue;
    const double entropy = qifs_entropy(model, fp.state);
    if (!found || entropy > best_entropy) {
      found = true;
      best_entropy = entropy;
      best_cost = cost;
      best_index = static_cast<int>(idx);
    }
  }
  if (!found) {
    throw Error(ErrorCode::Infeasible,
                "no candidate weight family satisfies the cost budget");
  }
  return CapacityResult{best_entropy, best_cost, best_index,
                        candidates[static_cast<std::size_t>(best_index)]};
}

}  // namespace qifs
