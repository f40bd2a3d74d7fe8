#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "oracle_utils.hpp"
#include "qifs/distances.hpp"
#include "qifs/embeddings.hpp"
#include "qifs/entropy.hpp"
#include "qifs/errors.hpp"
#include "qifs/model_ops.hpp"
#include "qifs/rng.hpp"
#include "qifs/solvers.hpp"
#include "qifs/stochastic.hpp"
#include "qifs/thermo.hpp"

using namespace qifs;

namespace {

StochasticMatrix chain2(double p00, double p01) {
  return StochasticMatrix(2, {p00, p01, 1.0 - p00, 1.0 - p01});
}

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected the call to raise a library error");
  return ErrorCode::BadInput;
}

double trace_under(const ComplexMatrix& op, const DensityMatrix& rho) {
  return (op * rho.mat() * op.adjoint()).trace().real();
}

// Elementary-unit dynamics E11, E12, E21, E22 with the worked row-filled
// potential whose branch traces on diagonal states are (4, 1, 2, 1).
KrausFamily elementary_units_2x2() {
  std::vector<ComplexMatrix> ops;
  for (int t = 0; t < 2; ++t) {
    for (int s = 0; s < 2; ++s) {
      ComplexMatrix e(2);
      e(t, s) = 1.0;
      ops.push_back(e);
    }
  }
  return KrausFamily(ops);
}

KrausFamily worked_two_level_potential() {
  const ComplexMatrix h1 = mat2(Complex(0, 2), Complex(0, 2), 0.0, 0.0);
  const ComplexMatrix h3 =
      mat2(Complex(0, std::sqrt(2.0)), Complex(0, std::sqrt(2.0)), 0.0, 0.0);
  return KrausFamily({h1, ComplexMatrix::identity(2), h3, ComplexMatrix::identity(2)});
}

}  // namespace

TEST_CASE("branch transition matrix rows are stochastic and track branch probabilities") {
  SplitRng rng(91001);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 2 + static_cast<int>(trial % 2);
    const int k = 2 + static_cast<int>(trial % 3 == 0);
    const QifsModel m = QifsModel::make(random_normalized_family(k, dim, rng),
                                        random_normalized_family(k, dim, rng));
    const DensityMatrix rho = random_density(dim, rng);
    const auto a = branch_transition_matrix(m, rho);
    REQUIRE(static_cast<int>(a.size()) == k);
    for (int i = 0; i < k; ++i) {
      double row_sum = 0.0;
      for (int j = 0; j < k; ++j) {
        CHECK(a[i][j] >= 0.0);
        // Row entry = weight probability evaluated at the branch image.
        CHECK(std::abs(a[i][j] - branch_prob(m, j, branch_map(m, i, rho))) <= 1e-13);
        row_sum += a[i][j];
      }
      CHECK(std::abs(row_sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("branch transition matrix rejects weighted branches with vanishing images") {
  ComplexMatrix e11(2);
  e11(0, 0) = 1.0;
  const QifsModel m =
      QifsModel::make(KrausFamily({e11}), KrausFamily({ComplexMatrix::identity(2)}));
  const DensityMatrix rho = DensityMatrix::diagonal({0.0, 1.0});
  CHECK(code_of([&] { branch_transition_matrix(m, rho); }) ==
        ErrorCode::DegenerateBranch);
}

TEST_CASE("entropy demands a solved fixed point") {
  SplitRng rng(91002);
  const QifsModel m = QifsModel::make(random_normalized_family(2, 2, rng),
                                      random_normalized_family(2, 2, rng));
  const DensityMatrix rho = random_density(2, rng);
  REQUIRE(distance_hs(lambda_apply(m, rho), rho) > 1e-6);
  CHECK(code_of([&] { qifs_entropy(m, rho); }) == ErrorCode::PreconditionUnmet);
}

TEST_CASE("embedded chains reproduce the chain entropy") {
  SplitRng rng(91003);
  for (int trial = 0; trial < 10; ++trial) {
    const StochasticMatrix p = random_column_stochastic(2, rng, 0.05);
    const StochasticMatrix q = random_column_stochastic(2, rng, 0.05);

    struct Case {
      QifsModel model;
      double expected;
    };
    const std::vector<Case> cases = {
        {embed_stochastic(p, EmbeddingKind::Hom4), markov_entropy(p)},
        {embed_stochastic(p, q, EmbeddingKind::NonHom4), markov_entropy(q)},
        {embed_stochastic(p, EmbeddingKind::Hom2), markov_entropy(p)},
        {embed_stochastic(p, q, EmbeddingKind::NonHom2), markov_entropy(p)},
    };
    for (const Case& c : cases) {
      const FixedPointResult fp = solve_lambda_fixed_point(c.model);
      CHECK(std::abs(qifs_entropy(c.model, fp.state) - c.expected) <= 1e-10);
    }
  }
}

TEST_CASE("markov entropy matches hand-computed values") {
  CHECK(markov_entropy(StochasticMatrix::uniform(2)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(markov_entropy(StochasticMatrix::uniform(3)) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-14));
  // Deterministic transitions carry no entropy.
  CHECK(markov_entropy(StochasticMatrix(2, {0.0, 1.0, 1.0, 0.0})) <= 1e-15);

  const StochasticMatrix p = chain2(0.6, 0.3);
  const double pi0 = 3.0 / 7.0;
  const double expected = pi0 * (eta(0.6) + eta(0.4)) + (1.0 - pi0) * (eta(0.3) + eta(0.7));
  CHECK(markov_entropy(p) == doctest::Approx(expected).epsilon(1e-12));

  CHECK(code_of([] { markov_entropy(StochasticMatrix(2, {1.0, 0.0, 0.0, 1.0})); }) ==
        ErrorCode::Reducible);
}

TEST_CASE("uniform weights reach the entropy ceiling for any dynamics") {
  SplitRng rng(91004);
  for (int trial = 0; trial < 6; ++trial) {
    const int dim = 2 + trial % 2;
    const int k = 2 + trial % 3;
    const QifsModel m = QifsModel::make(random_normalized_family(k, dim, rng),
                                        uniform_weight_family(k, dim));
    const FixedPointResult fp = solve_lambda_fixed_point(m);
    CHECK(std::abs(qifs_entropy(m, fp.state) - std::log(static_cast<double>(k))) <=
          1e-12);
    const auto a = branch_transition_matrix(m, fp.state);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        CHECK(std::abs(a[i][j] - 1.0 / k) <= 1e-12);
      }
    }
  }
}

TEST_CASE("a unitary weight branch collapses the entropy to zero") {
  SplitRng rng(91005);
  const QifsModel base = embed_stochastic(chain2(0.3, 0.8), EmbeddingKind::Hom2);
  const ComplexMatrix u = random_unitary(2, rng);
  const ComplexMatrix zero(2);

  for (int unitary_slot = 0; unitary_slot < 2; ++unitary_slot) {
    std::vector<ComplexMatrix> w_ops = {zero, zero};
    w_ops[unitary_slot] = u;
    const QifsModel m = QifsModel::make(base.dynamics, KrausFamily(w_ops));
    const FixedPointResult fp = solve_lambda_fixed_point(m);
    CHECK(qifs_entropy(m, fp.state) <= 1e-12);
  }
}

TEST_CASE("entropy equals its transfer-operator evaluation and stays within bounds") {
  SplitRng rng(91006);
  for (int trial = 0; trial < 8; ++trial) {
    const int dim = 2 + trial % 2;
    const int k = 2 + trial % 2;
    const KrausFamily dynamics = random_normalized_family(k, dim, rng);
    const QifsModel m = (trial % 2 == 0)
                            ? QifsModel::homogeneous(dynamics)
                            : QifsModel::make(dynamics,
                                              random_normalized_family(k, dim, rng));
    const FixedPointResult fp = solve_lambda_fixed_point(m);
    const double h = qifs_entropy(m, fp.state);
    CHECK(h >= 0.0);
    CHECK(h <= std::log(static_cast<double>(k)) + 1e-12);

    const Observable branch_entropy = [&m](const DensityMatrix& r) {
      return shannon_branch_entropy(m, r);
    };
    CHECK(std::abs(h - dual_apply(m, branch_entropy, fp.state)) <= 1e-12);
    // One transfer step can only spread the branch distribution: Jensen.
    CHECK(h <= shannon_branch_entropy(m, fp.state) + 1e-10);
  }
}

TEST_CASE("transfer iterates of the branch entropy decrease for homogeneous models") {
  SplitRng rng(91007);
  for (int trial = 0; trial < 5; ++trial) {
    const int dim = 2 + trial % 2;
    const int k = 2 + trial % 2;
    const QifsModel m = QifsModel::homogeneous(random_normalized_family(k, dim, rng));
    const FixedPointResult fp = solve_lambda_fixed_point(m);

    Observable level = [&m](const DensityMatrix& r) {
      return shannon_branch_entropy(m, r);
    };
    double prev = shannon_branch_entropy(m, fp.state);
    for (int depth = 1; depth <= 5; ++depth) {
      const double current = dual_apply(m, level, fp.state);
      CHECK(current <= prev + 1e-10);
      prev = current;
      const Observable lower = level;
      level = [&m, lower](const DensityMatrix& r) { return dual_apply(m, lower, r); };
    }
  }
}

TEST_CASE("worked two-level eigenproblem and its pressure sweep") {
  const KrausFamily dynamics = elementary_units_2x2();
  const KrausFamily potential = worked_two_level_potential();
  const EigenResult eig = solve_ruelle_eigen(potential, dynamics);

  const double beta_expected = (5.0 + std::sqrt(17.0)) / 2.0;
  CHECK(std::abs(eig.beta - beta_expected) <= 1e-9);
  CHECK(closed_form_2x2_diagonal(4.0, 1.0, 2.0, 1.0).lambda_plus ==
        doctest::Approx(beta_expected).epsilon(1e-14));

  CHECK(std::abs(eig.rho_beta.mat()(0, 1)) <= 1e-8);
  const double diag_ratio =
      eig.rho_beta.mat()(0, 0).real() / eig.rho_beta.mat()(1, 1).real();
  CHECK(std::abs(diag_ratio - (3.0 + std::sqrt(17.0)) / 4.0) <= 1e-8);

  const double expected_traces[4] = {4.0, 1.0, 2.0, 1.0};
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(trace_under(potential.op(j), eig.rho_beta) - expected_traces[j]) <=
          1e-9);
  }

  SplitRng rng(91008);
  for (int sample = 0; sample < 200; ++sample) {
    const QifsModel m =
        QifsModel::make(dynamics, random_normalized_family(4, 2, rng));
    const FixedPointResult fp = solve_lambda_fixed_point(m);
    const PressureReport report =
        pressure_check_trace_form(m, potential, eig, fp.state);
    CHECK(report.gap >= -1e-9);
    if (report.equality_residual <= 1e-9) CHECK(report.gap <= 1e-8);
  }
}

TEST_CASE("maximizing weights close the pressure gap on the worked instance") {
  const KrausFamily dynamics = elementary_units_2x2();
  const KrausFamily potential = worked_two_level_potential();
  const EigenResult eig = solve_ruelle_eigen(potential, dynamics);

  // Elementary-unit branches are neither unitary nor scalar, and their images
  // are rank-one projectors no mixed fixed point can equal.
  CHECK(code_of([&] { maximizing_weights(dynamics, potential, eig); }) ==
        ErrorCode::PreconditionUnmet);

  const KrausFamily best = maximizing_weights(dynamics, potential, eig, false);
  CHECK(best.normalization_defect() <= 1e-12);
  const QifsModel m = QifsModel::make(dynamics, best);
  const FixedPointResult fp = solve_lambda_fixed_point(m);
  const PressureReport report = pressure_check_trace_form(m, potential, eig, fp.state);
  CHECK(std::abs(report.gap) <= 1e-9);
  CHECK(report.equality_residual <= 1e-9);
}

TEST_CASE("single-branch identity model sits exactly at the bound") {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  const QifsModel m = QifsModel::make(KrausFamily({id}), KrausFamily({id}));
  const KrausFamily potential(
      std::vector<ComplexMatrix>{std::sqrt(2.5) * ComplexMatrix::identity(2)});
  const EigenResult eig = solve_ruelle_eigen(potential, m.dynamics);
  CHECK(std::abs(eig.beta - 2.5) <= 1e-12);

  const FixedPointResult fp = solve_lambda_fixed_point(m);
  const PressureReport report = pressure_check_trace_form(m, potential, eig, fp.state);
  CHECK(report.entropy_term <= 1e-15);
  CHECK(std::abs(report.lhs - std::log(2.5)) <= 1e-12);
  CHECK(std::abs(report.gap) <= 1e-12);
  CHECK(report.equality_residual <= 1e-12);
}

TEST_CASE("coordinate form on embedded chains reduces to the classic inequality") {
  SplitRng rng(91009);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> a(4);
    for (double& v : a) v = 2.0 * rng.next_double() - 1.0;
    const StochasticMatrix q = random_column_stochastic(2, rng, 0.05);

    const BridgeModel bridge = embed_classic_bridge(a, q);
    const EigenResult eig =
        solve_ruelle_eigen(bridge.potential, bridge.model.dynamics);
    const FixedPointResult fp = solve_lambda_fixed_point(bridge.model);

    const PressureReport first =
        pressure_check_coordinate_form(bridge.model, bridge.potential, eig, fp.state, 0, 0);
    const PressureReport second =
        pressure_check_coordinate_form(bridge.model, bridge.potential, eig, fp.state, 1, 1);
    const PressureReport classic = classic_inequality_check(a, q);

    CHECK(std::abs(first.lhs - classic.lhs) <= 1e-9);
    CHECK(std::abs(first.log_beta - classic.log_beta) <= 1e-9);
    CHECK(std::abs(first.gap - classic.gap) <= 1e-9);
    CHECK(std::abs(first.lhs - second.lhs) <= 1e-12);
    CHECK(std::abs(first.gap - second.gap) <= 1e-12);
    CHECK(std::abs(first.entropy_term - markov_entropy(q)) <= 1e-10);
    CHECK(first.coord_l == 0);
    CHECK(first.form == PressureForm::Coordinate);

    // Diagonal eigenstate: an off-diagonal coordinate has no defined ratio.
    CHECK(code_of([&] {
            pressure_check_coordinate_form(bridge.model, bridge.potential, eig,
                                           fp.state, 0, 1);
          }) == ErrorCode::CoordinateDegenerate);
  }
}

TEST_CASE("classic inequality at the optimal weights and in closed form") {
  // Entrywise logs of [[1,4],[3,1/2]]; its Perron root is (3+sqrt(193))/4.
  const std::vector<double> a = {std::log(1.0), std::log(4.0), std::log(3.0),
                                 std::log(0.5)};
  Eigen::MatrixXcd expa(2, 2);
  expa << 1.0, 4.0, 3.0, 0.5;
  const double beta = (3.0 + std::sqrt(193.0)) / 4.0;
  const Eigen::VectorXcd left = oracle::dominant_eigenvector(expa.transpose());
  std::vector<double> q_entries(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      q_entries[static_cast<std::size_t>(2 * i + j)] =
          std::exp(a[static_cast<std::size_t>(2 * i + j)]) * left(i).real() /
          (beta * left(j).real());
    }
  }
  const PressureReport report =
      classic_inequality_check(a, StochasticMatrix(2, q_entries));
  CHECK(std::abs(report.log_beta - std::log(beta)) <= 1e-10);
  CHECK(std::abs(report.gap) <= 1e-9);
  CHECK(report.equality_residual <= 1e-9);
  CHECK(report.form == PressureForm::Classic);
}

TEST_CASE("classic inequality equalizes on constant potentials") {
  for (int k = 2; k <= 3; ++k) {
    const double c = 0.7;
    const std::vector<double> a(static_cast<std::size_t>(k) * k, c);
    const PressureReport report = classic_inequality_check(a, StochasticMatrix::uniform(k));
    CHECK(std::abs(report.lhs - (std::log(static_cast<double>(k)) + c)) <= 1e-12);
    CHECK(std::abs(report.log_beta - (std::log(static_cast<double>(k)) + c)) <= 1e-12);
    CHECK(std::abs(report.gap) <= 1e-12);
    CHECK(report.equality_residual <= 1e-12);
  }
}

TEST_CASE("classic inequality holds across a random sweep") {
  SplitRng rng(91010);
  for (int sample = 0; sample < 1000; ++sample) {
    std::vector<double> a(4);
    for (double& v : a) v = 4.0 * rng.next_double() - 2.0;
    const StochasticMatrix q = random_column_stochastic(2, rng, 0.02);
    CHECK(classic_inequality_check(a, q).gap >= -1e-9);
  }

  CHECK(code_of([] {
          classic_inequality_check({1.0, 2.0}, StochasticMatrix::uniform(2));
        }) == ErrorCode::BadInput);
  CHECK(code_of([] {
          classic_inequality_check({1.0, 1.0, 1.0, 1.0},
                                   StochasticMatrix(2, {1.0, 0.0, 0.0, 1.0}));
        }) == ErrorCode::Reducible);
}

TEST_CASE("maximizing weights attain equality for unitary dynamics") {
  SplitRng rng(91011);
  for (int trial = 0; trial < 8; ++trial) {
    const int dim = 2 + trial % 2;
    const int k = 2 + (trial / 2) % 2;
    std::vector<ComplexMatrix> v_ops;
    std::vector<ComplexMatrix> h_ops;
    for (int i = 0; i < k; ++i) {
      v_ops.push_back(random_unitary(dim, rng));
      h_ops.push_back(random_gaussian_matrix(dim, rng));
    }
    const KrausFamily dynamics(v_ops);
    const KrausFamily potential(h_ops);
    const EigenResult eig = solve_ruelle_eigen(potential, dynamics);

    const KrausFamily best = maximizing_weights(dynamics, potential, eig);
    CHECK(best.normalization_defect() <= 1e-12);
    for (int j = 0; j < k; ++j) {
      // Unitary branches leave the trace alone, so the share reduces to
      // tr(H_jρ_βH_j†)/β.
      const double expected = std::sqrt(trace_under(potential.op(j), eig.rho_beta) / eig.beta);
      CHECK(std::abs(best.op(j)(0, 0).real() - expected) <= 1e-12);
    }

    const QifsModel m = QifsModel::make(dynamics, best);
    const FixedPointResult fp = solve_lambda_fixed_point(m);
    const PressureReport report = pressure_check_trace_form(m, potential, eig, fp.state);
    CHECK(std::abs(report.gap) <= 1e-9);
    CHECK(report.equality_residual <= 1e-9);
  }
}

TEST_CASE("maximizing weights handle scalar dynamics and scalar potentials") {
  SplitRng rng(91012);

  // Scalar dynamics pass the applicability gate.
  {
    std::vector<ComplexMatrix> v_ops;
    for (double c : {0.5, 1.2, 0.8}) v_ops.push_back(c * ComplexMatrix::identity(2));
    const KrausFamily dynamics(v_ops);
    std::vector<ComplexMatrix> h_ops;
    for (int i = 0; i < 3; ++i) h_ops.push_back(random_gaussian_matrix(2, rng));
    const KrausFamily potential(h_ops);
    const EigenResult eig = solve_ruelle_eigen(potential, dynamics);

    const KrausFamily best = maximizing_weights(dynamics, potential, eig);
    CHECK(best.normalization_defect() <= 1e-12);
    const QifsModel m = QifsModel::make(dynamics, best);
    const FixedPointResult fp = solve_lambda_fixed_point(m);
    const PressureReport report = pressure_check_trace_form(m, potential, eig, fp.state);
    CHECK(std::abs(report.gap) <= 1e-9);
    CHECK(report.equality_residual <= 1e-9);
  }

  // Scalar potentials c_j·I with unitary dynamics give shares c_j²/Σc².
  {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    const ComplexMatrix x = mat2(0.0, 1.0, 1.0, 0.0);
    const ComplexMatrix y = mat2(0.0, Complex(0, -1), Complex(0, 1), 0.0);
    const KrausFamily dynamics({id, x, y});
    const double c[3] = {1.0, 2.0, 3.0};
    std::vector<ComplexMatrix> h_ops;
    for (double ci : c) h_ops.push_back(ci * ComplexMatrix::identity(2));
    const KrausFamily potential(h_ops);
    const EigenResult eig = solve_ruelle_eigen(potential, dynamics);
    CHECK(std::abs(eig.beta - 14.0) <= 1e-10);

    const KrausFamily best = maximizing_weights(dynamics, potential, eig);
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(best.op(j)(0, 0).real() - c[j] / std::sqrt(14.0)) <= 1e-12);
    }
  }

  // A single branch always fixes its own fixed point.
  {
    const KrausFamily dynamics({mat2(1.0, 1.0, 0.0, 2.0)});
    const KrausFamily potential({ComplexMatrix::identity(2)});
    const EigenResult eig = solve_ruelle_eigen(potential, dynamics);
    const KrausFamily best = maximizing_weights(dynamics, potential, eig);
    CHECK(max_abs_diff(best.op(0), ComplexMatrix::identity(2)) <= 1e-9);
  }

  // A potential branch with zero trace at the eigenstate cannot be weighted.
  {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    const KrausFamily dynamics({id, id});
    const KrausFamily potential({ComplexMatrix(2), id});
    const EigenResult eig = solve_ruelle_eigen(potential, dynamics);
    CHECK(code_of([&] { maximizing_weights(dynamics, potential, eig); }) ==
          ErrorCode::DegeneratePotential);
  }

  // Shape mismatches are input errors.
  {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    const KrausFamily dynamics({id, id});
    const KrausFamily potential({id});
    CHECK(code_of([&] { maximizing_weights(dynamics, potential, EigenResult{}); }) ==
          ErrorCode::BadInput);
  }
}

TEST_CASE("potential renormalization rescales the eigenvalue only") {
  SplitRng rng(91013);
  const KrausFamily dynamics = random_normalized_family(2, 2, rng);
  const KrausFamily potential(
      {random_gaussian_matrix(2, rng), random_gaussian_matrix(2, rng)});

  const KrausFamily same = renormalize_potential(potential, 1.0);
  for (int j = 0; j < 2; ++j) CHECK(max_abs_diff(same.op(j), potential.op(j)) == 0.0);

  const EigenResult eig1 = solve_ruelle_eigen(potential, dynamics);
  const KrausFamily doubled = renormalize_potential(potential, 2.0);
  const EigenResult eig2 = solve_ruelle_eigen(doubled, dynamics);
  CHECK(std::abs(eig2.beta - 2.0 * eig1.beta) <= 1e-9 * (1.0 + 2.0 * eig1.beta));
  CHECK(distance_hs(eig2.rho_beta, eig1.rho_beta) <= 1e-8);

  // Scaling shifts both sides of the bound by ln α, leaving the gap fixed.
  const QifsModel m = QifsModel::make(dynamics, uniform_weight_family(2, 2));
  const FixedPointResult fp = solve_lambda_fixed_point(m);
  const PressureReport before = pressure_check_trace_form(m, potential, eig1, fp.state);
  const PressureReport after = pressure_check_trace_form(m, doubled, eig2, fp.state);
  CHECK(std::abs(after.lhs - before.lhs - std::log(2.0)) <= 1e-9);
  CHECK(std::abs(after.log_beta - before.log_beta - std::log(2.0)) <= 1e-9);
  CHECK(std::abs(after.gap - before.gap) <= 1e-9);

  CHECK(code_of([&] { renormalize_potential(potential, 0.0); }) == ErrorCode::BadInput);
  CHECK(code_of([&] { renormalize_potential(potential, -2.0); }) == ErrorCode::BadInput);
}

TEST_CASE("pressure reports flag weighted branches with undefined logarithms") {
  const ComplexMatrix id = ComplexMatrix::identity(2);

  // Zero potential branch carrying weight: no defined logarithm.
  {
    const QifsModel m = QifsModel::make(KrausFamily({id, id}), uniform_weight_family(2, 2));
    const KrausFamily potential({ComplexMatrix(2), id});
    const EigenResult eig = solve_ruelle_eigen(potential, m.dynamics);
    const FixedPointResult fp = solve_lambda_fixed_point(m);
    CHECK(code_of([&] { pressure_check_trace_form(m, potential, eig, fp.state); }) ==
          ErrorCode::DegeneratePotential);
    CHECK(code_of([&] {
            pressure_check_coordinate_form(m, potential, eig, fp.state, 0, 0);
          }) == ErrorCode::DegeneratePotential);
  }

  // A weighted branch whose image vanishes at the requested coordinate.
  {
    const KrausFamily dynamics(
        {mat2(0.0, 0.0, 1.0, 1.0), mat2(1.0, 1.0, 0.0, 0.0)});
    const QifsModel m = QifsModel::make(dynamics, uniform_weight_family(2, 2));
    const KrausFamily potential({id, id});
    const EigenResult eig = solve_ruelle_eigen(potential, dynamics);
    const FixedPointResult fp = solve_lambda_fixed_point(m);
    CHECK(code_of([&] {
            pressure_check_coordinate_form(m, potential, eig, fp.state, 0, 0);
          }) == ErrorCode::CoordinateDegenerate);
    CHECK(code_of([&] {
            pressure_check_coordinate_form(m, potential, eig, fp.state, 0, 2);
          }) == ErrorCode::BadInput);
  }
}

TEST_CASE("uniform weight family is normalized to round-off") {
  const KrausFamily w = uniform_weight_family(3, 2);
  CHECK(w.normalization_defect() <= 1e-15);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(w.op(j)(0, 0).real() - 1.0 / std::sqrt(3.0)) <= 1e-15);
  }
  CHECK(code_of([] { uniform_weight_family(0, 2); }) == ErrorCode::BadInput);
}

TEST_CASE("capacity search maximizes entropy under the cost budget") {
  SplitRng rng(91014);
  const KrausFamily dynamics = random_normalized_family(2, 2, rng);
  std::vector<KrausFamily> grid;
  grid.push_back(uniform_weight_family(2, 2));
  for (int i = 0; i < 4; ++i) grid.push_back(random_normalized_family(2, 2, rng));
  const ComplexMatrix cost = random_hermitian(2, rng);

  // Evaluate every candidate directly for reference.
  std::vector<double> entropies;
  std::vector<double> costs;
  for (const KrausFamily& w : grid) {
    const QifsModel m = QifsModel::make(dynamics, w);
    const FixedPointResult fp = solve_lambda_fixed_point(m);
    entropies.push_back(qifs_entropy(m, fp.state));
    costs.push_back((cost * fp.state.mat()).trace().real());
  }

  // Slack budget: the uniform family's ceiling ln 2 wins.
  const CapacityResult slack = capacity_cost(dynamics, grid, cost, 1e6);
  CHECK(slack.candidate_index == 0);
  CHECK(std::abs(slack.entropy - std::log(2.0)) <= 1e-12);

  // A budget that excludes the uniform family picks the best feasible one.
  const double tight_budget = costs[0] - 1e-6;
  double best_feasible = -1.0;
  int best_index = -1;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (costs[i] <= tight_budget + 1e-12 && entropies[i] > best_feasible) {
      best_feasible = entropies[i];
      best_index = static_cast<int>(i);
    }
  }
  if (best_index >= 0) {
    const CapacityResult constrained = capacity_cost(dynamics, grid, cost, tight_budget);
    CHECK(constrained.candidate_index == best_index);
    CHECK(std::abs(constrained.entropy - best_feasible) <= 1e-12);
    CHECK(constrained.cost <= tight_budget + 1e-12);
  }

  // An unreachable budget leaves the feasible set empty.
  double min_cost = costs[0];
  for (double c : costs) min_cost = std::min(min_cost, c);
  CHECK(code_of([&] { capacity_cost(dynamics, grid, cost, min_cost - 1.0); }) ==
        ErrorCode::Infeasible);

  CHECK(code_of([&] { capacity_cost(dynamics, {}, cost, 1.0); }) == ErrorCode::BadInput);
  CHECK(code_of([&] {
          capacity_cost(dynamics, {KrausFamily({ComplexMatrix::identity(2),
                                                ComplexMatrix::identity(2)})},
                        cost, 1.0);
        }) == ErrorCode::NotNormalized);
  CHECK(code_of([&] {
          capacity_cost(dynamics, grid, random_gaussian_matrix(2, rng), 1.0);
        }) == ErrorCode::BadInput);
}
