#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle_utils.hpp"
#include "qifs/distances.hpp"
#include "qifs/entropy.hpp"
#include "qifs/errors.hpp"
#include "qifs/kraus.hpp"
#include "qifs/model_ops.hpp"
#include "qifs/solvers.hpp"
#include "qifs/words.hpp"

using namespace qifs;

namespace {

// Two-branch model with constant selection probabilities (1/4, 3/4) whose
// state diag(1/3, 2/3) is fixed by both branch maps.
QifsModel quarter_model() {
  const double s = 3.0 * std::sqrt(2.0);
  KrausFamily dynamics({ComplexMatrix{{-1.0, 0.0}, {0.0, 1.0}},
                        ComplexMatrix{{0.0, -s / 4.0}, {-s / 2.0, 0.0}}});
  ComplexMatrix w1 = ComplexMatrix::identity(2);
  w1 *= Complex(0.5, 0.0);
  ComplexMatrix w2 = ComplexMatrix::identity(2);
  w2 *= Complex(std::sqrt(3.0) / 2.0, 0.0);
  return QifsModel::make(dynamics, KrausFamily({w1, w2}));
}

QifsModel random_model(std::mt19937_64& rng, int k, int n) {
  KrausFamily dynamics(oracle::random_normalized_family(rng, k, n));
  KrausFamily weights(oracle::random_normalized_family(rng, k, n));
  return QifsModel::make(std::move(dynamics), std::move(weights));
}

const DensityMatrix kThird = DensityMatrix::diagonal({1.0 / 3.0, 2.0 / 3.0});

}  // namespace

TEST_CASE("model construction rejects unnormalized weights and mismatches") {
  ComplexMatrix eye = ComplexMatrix::identity(2);
  CHECK_THROWS_WITH_AS(QifsModel::make(KrausFamily({eye}), KrausFamily({eye, eye})),
                       doctest::Contains("arities"), Error);
  // Two identities sum to 2I: clearly not a normalized weight family.
  CHECK_THROWS_WITH_AS(QifsModel::make(KrausFamily({eye, eye}), KrausFamily({eye, eye})),
                       doctest::Contains("not normalized"), Error);
  CHECK_THROWS_AS(KrausFamily({eye, ComplexMatrix::identity(3)}), Error);
}

TEST_CASE("branch probabilities on the quarter model are state independent") {
  QifsModel m = quarter_model();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    DensityMatrix rho = oracle::random_density(rng, 2);
    CHECK(branch_prob(m, 0, rho) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(branch_prob(m, 1, rho) == doctest::Approx(0.75).epsilon(1e-12));
  }
}

TEST_CASE("both quarter-model branches fix diag(1/3, 2/3)") {
  QifsModel m = quarter_model();
  CHECK(distance_hs(branch_map(m, 0, kThird), kThird) <= 1e-14);
  CHECK(distance_hs(branch_map(m, 1, kThird), kThird) <= 1e-14);
  CHECK(distance_hs(lambda_apply(m, kThird), kThird) <= 1e-14);
}

TEST_CASE("branch probabilities sum to one across random models and states") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 3);
    const int n = 2 + static_cast<int>(rng() % 3);
    QifsModel m = random_model(rng, k, n);
    DensityMatrix rho = oracle::random_density(rng, n);
    double sum = 0.0;
    for (double p : branch_probabilities(m, rho)) {
      CHECK(p >= 0.0);
      sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("markov operator output is a valid state and matches the weighted sum") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    QifsModel m = random_model(rng, 3, 3);
    DensityMatrix rho = oracle::random_density(rng, 3);
    DensityMatrix out = lambda_apply(m, rho);
    CHECK_NOTHROW(DensityMatrix::validated(out.mat()));

    ComplexMatrix manual(3);
    for (int i = 0; i < 3; ++i) {
      DensityMatrix fi = branch_map(m, i, rho);
      manual += Complex(branch_prob(m, i, rho), 0.0) * fi.mat();
    }
    CHECK(max_abs_diff(out.mat(), hermitize(manual)) <= 1e-12);
  }
}

TEST_CASE("homogeneous channel is trace preserving and equals the weighted form") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 3);
    KrausFamily v(oracle::random_normalized_family(rng, k, 2));
    DensityMatrix rho = oracle::random_density(rng, 2);

    ComplexMatrix raw(2);
    for (int i = 0; i < k; ++i) raw += v.op(i) * rho.mat() * v.op(i).adjoint();
    CHECK(raw.trace().real() == doctest::Approx(1.0).epsilon(1e-12));

    DensityMatrix lin = lambda_homogeneous(v, rho);
    DensityMatrix weighted = lambda_apply(QifsModel::homogeneous(v), rho);
    CHECK(distance_hs(lin, weighted) <= 1e-12);
  }
}

TEST_CASE("dual operator agrees with the markov operator on linear observables") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    QifsModel m = random_model(rng, 3, n);
    DensityMatrix rho = oracle::random_density(rng, n);
    ComplexMatrix a = oracle::random_hermitian(rng, n);
    Observable psi = linear_observable(a);
    CHECK(dual_apply(m, psi, rho) == doctest::Approx(psi(lambda_apply(m, rho))).epsilon(1e-10));
  }
}

TEST_CASE("degenerate branches: dropped at zero weight, fatal with weight") {
  // Branch 0 annihilates everything. Weight family: projectors onto the
  // basis, so p_0(|1><1|) = 0 and the dead branch is dropped there.
  KrausFamily dynamics({ComplexMatrix(2), ComplexMatrix::identity(2)});
  KrausFamily weights({ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}, ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}});
  QifsModel m = QifsModel::make(dynamics, weights);

  DensityMatrix e1 = DensityMatrix::pure({0.0, 1.0});
  CHECK(distance_hs(lambda_apply(m, e1), e1) <= 1e-14);

  DensityMatrix e0 = DensityMatrix::pure({1.0, 0.0});
  CHECK_THROWS_WITH_AS(lambda_apply(m, e0), doctest::Contains("vanishing"), Error);
  CHECK_THROWS_AS(branch_map(m, 0, e0), Error);
}

TEST_CASE("word probability and image walk the branches in order") {
  QifsModel m = quarter_model();
  WordResult w = word_prob_and_map(m, {0, 1, 1}, kThird);
  CHECK(w.prob == doctest::Approx(0.25 * 0.75 * 0.75).epsilon(1e-12));
  CHECK(distance_hs(w.image, kThird) <= 1e-13);
  CHECK_FALSE(w.vanished);

  WordResult empty = word_prob_and_map(m, {}, kThird);
  CHECK(empty.prob == 1.0);
  CHECK(distance_hs(empty.image, kThird) == 0.0);
}

TEST_CASE("words through a zero-probability step vanish") {
  KrausFamily dynamics({ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}, ComplexMatrix::identity(2)});
  KrausFamily weights({ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}, ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}});
  QifsModel m = QifsModel::make(dynamics, weights);
  DensityMatrix e1 = DensityMatrix::pure({0.0, 1.0});

  // p_0(e1) = 0, so any word starting with branch 0 vanishes.
  WordResult dead = word_prob_and_map(m, {0, 1}, e1);
  CHECK(dead.prob == 0.0);
  CHECK(dead.vanished);

  // Branch 1 keeps e1 alive with probability one.
  WordResult alive = word_prob_and_map(m, {1, 1, 1}, e1);
  CHECK(alive.prob == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("word probabilities over all words of length n sum to one") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    QifsModel m = random_model(rng, 2, 2);
    DensityMatrix rho = oracle::random_density(rng, 2);
    for (int n = 1; n <= 5; ++n)
      CHECK(word_probability_sum(m, rho, n) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("partial entropy: zero at n = 0, additive for constant probabilities") {
  QifsModel m = quarter_model();
  CHECK(partial_entropy(m, kThird, 0) == 0.0);
  const double h1 = eta(0.25) + eta(0.75);
  // With state-independent probabilities the word distribution is a product
  // measure, so H_n = n·H_1.
  for (int n = 1; n <= 5; ++n)
    CHECK(partial_entropy(m, kThird, n) == doctest::Approx(n * h1).epsilon(1e-11));
}

TEST_CASE("word enumeration cap triggers CapExceeded") {
  std::mt19937_64 rng(43);
  QifsModel m = random_model(rng, 4, 2);
  // 4^10 > 1e6
  CHECK_THROWS_WITH_AS(partial_entropy(m, DensityMatrix::maximally_mixed(2), 10),
                       doctest::Contains("cap"), Error);
  CHECK_THROWS_AS(iterated_dual_entropy(m, DensityMatrix::maximally_mixed(2), 10), Error);
}

TEST_CASE("iterated dual entropy is constant on the quarter model's fixed state") {
  QifsModel m = quarter_model();
  const double h0 = shannon_branch_entropy(m, kThird);
  CHECK(h0 == doctest::Approx(eta(0.25) + eta(0.75)).epsilon(1e-12));
  for (int n = 0; n <= 4; ++n)
    CHECK(iterated_dual_entropy(m, kThird, n) == doctest::Approx(h0).epsilon(1e-10));
}

TEST_CASE("iterated dual entropy decreases along n at homogeneous fixed points") {
  // Monotonicity rests on concavity propagating through the dual operator,
  // which requires the selection weights to coincide with the dynamics
  // family (the weighted branch terms are then perspectives of η). With
  // independent weights the n ≥ 2 terms are no longer concave and the
  // sequence can tick upward, so the monotone check lives on homogeneous
  // models only; see the general-model test below for what survives.
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 12; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 2);
    QifsModel m = QifsModel::homogeneous(KrausFamily(oracle::random_normalized_family(rng, k, 2)));
    FixedPointResult fp = solve_lambda_fixed_point(m, SolveConfig{1e-13, 200000, 0, {}});
    double prev = iterated_dual_entropy(m, fp.state, 0);
    for (int n = 1; n <= 5; ++n) {
      const double cur = iterated_dual_entropy(m, fp.state, n);
      CHECK(cur <= prev + 1e-9);
      prev = cur;
    }
  }
}

TEST_CASE("one dual step lowers h at any model's fixed point") {
  // One-step averaging under the concave h can only lower the value (plain
  // Jensen with Σ p_i = 1 and Σ p_i F_i(ρ̄) = ρ̄). Deeper iterates need the
  // affine decomposition of Λⁿ into words, which again only the homogeneous
  // case provides, so n ≥ 2 carries no general guarantee.
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 12; ++trial) {
    QifsModel m = random_model(rng, 2, 2);
    FixedPointResult fp = solve_lambda_fixed_point(m, SolveConfig{1e-13, 200000, 0, {}});
    const double h0 = shannon_branch_entropy(m, fp.state);
    CHECK(iterated_dual_entropy(m, fp.state, 1) <= h0 + 1e-9);
  }
}
