#include "qifs/embeddings.hpp"

#include <cmath>
#include <utility>

#include "qifs/distances.hpp"
#include "qifs/errors.hpp"
#include "qifs/model_ops.hpp"

namespace qifs {
namespace {

void require_2x2_positive(const StochasticMatrix& m, const char* what) {
  if (m.dim() != 2) {
    throw Error(ErrorCode::BadInput,
                std::string(what) + " embedding is defined for 2x2 matrices");
  }
  if (!m.entries_positive()) {
    throw Error(ErrorCode::EmbeddingDegenerate,
                std::string(what) +
                    " embedding requires strictly positive entries "
                    "(zero entries would feed logarithms downstream)");
  }
}

// One operator per entry: branch (i,j) holds √s_ij at position (i,j),
// row-major branch order (0,0), (0,1), (1,0), (1,1).
std::vector<ComplexMatrix> four_matrix_pattern(const StochasticMatrix& s) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ComplexMatrix v(2);
      v(i, j) = std::sqrt(s.p(i, j));
      ops.push_back(v);
    }
  }
  return ops;
}

// One operator per column: branch j holds column j of entrywise-√ S.
std::vector<ComplexMatrix> two_matrix_pattern(const StochasticMatrix& s) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(2);
  for (int j = 0; j < 2; ++j) {
    ComplexMatrix v(2);
    for (int i = 0; i < 2; ++i) v(i, j) = std::sqrt(s.p(i, j));
    ops.push_back(v);
  }
  return ops;
}

void require_size4_finite(const std::vector<double>& a, const char* what) {
  if (a.size() != 4) {
    throw Error(ErrorCode::BadInput,
                std::string(what) + " takes a 2x2 matrix (4 row-major entries)");
  }
  for (double v : a) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::BadInput,
                  std::string(what) + " requires finite entries");
    }
  }
}

}  // namespace

int embedding_arity(EmbeddingKind kind) {
  switch (kind) {
    case EmbeddingKind::Hom4:
    case EmbeddingKind::NonHom4:
    case EmbeddingKind::ClassicBridge:
      return 4;
    case EmbeddingKind::Hom2:
    case EmbeddingKind::NonHom2:
    case EmbeddingKind::PerronPotential:
      return 2;
  }
  throw Error(ErrorCode::BadInput, "unknown embedding kind");
}

const char* embedding_kind_name(EmbeddingKind kind) {
  switch (kind) {
    case EmbeddingKind::Hom4: return "hom4";
    case EmbeddingKind::NonHom4: return "nonhom4";
    case EmbeddingKind::Hom2: return "hom2";
    case EmbeddingKind::NonHom2: return "nonhom2";
    case EmbeddingKind::PerronPotential: return "perron";
    case EmbeddingKind::ClassicBridge: return "bridge";
  }
  throw Error(ErrorCode::BadInput, "unknown embedding kind");
}

EmbeddingKind embedding_kind_from_name(const std::string& name) {
  if (name == "hom4") return EmbeddingKind::Hom4;
  if (name == "nonhom4") return EmbeddingKind::NonHom4;
  if (name == "hom2") return EmbeddingKind::Hom2;
  if (name == "nonhom2") return EmbeddingKind::NonHom2;
  if (name == "perron") return EmbeddingKind::PerronPotential;
  if (name == "bridge") return EmbeddingKind::ClassicBridge;
  throw Error(ErrorCode::BadInput, "unknown embedding kind '" + name + "'");
}

QifsModel embed_stochastic(const StochasticMatrix& p, EmbeddingKind kind) {
  require_2x2_positive(p, "stochastic");
  switch (kind) {
    case EmbeddingKind::Hom4:
      return QifsModel::homogeneous(KrausFamily(four_matrix_pattern(p)));
    case EmbeddingKind::Hom2:
      return QifsModel::homogeneous(KrausFamily(two_matrix_pattern(p)));
    case EmbeddingKind::NonHom4:
    case EmbeddingKind::NonHom2:
      throw Error(ErrorCode::BadInput,
                  "nonhomogeneous embedding needs a weight matrix Q");
    case EmbeddingKind::PerronPotential:
    case EmbeddingKind::ClassicBridge:
      throw Error(ErrorCode::BadInput,
                  "this kind has a dedicated builder (embed_perron / "
                  "embed_classic_bridge)");
  }
  throw Error(ErrorCode::BadInput, "unknown embedding kind");
}

QifsModel embed_stochastic(const StochasticMatrix& p,
                           const StochasticMatrix& q, EmbeddingKind kind) {
  require_2x2_positive(p, "stochastic");
  require_2x2_positive(q, "stochastic");
  switch (kind) {
    case EmbeddingKind::NonHom4:
      return QifsModel::make(KrausFamily(four_matrix_pattern(p)),
                             KrausFamily(four_matrix_pattern(q)));
    case EmbeddingKind::NonHom2:
      return QifsModel::make(KrausFamily(two_matrix_pattern(p)),
                             KrausFamily(two_matrix_pattern(q)));
    case EmbeddingKind::Hom4:
    case EmbeddingKind::Hom2:
      throw Error(ErrorCode::BadInput,
                  "homogeneous embedding takes no weight matrix Q");
    case EmbeddingKind::PerronPotential:
    case EmbeddingKind::ClassicBridge:
      throw Error(ErrorCode::BadInput,
                  "this kind has a dedicated builder (embed_perron / "
                  "embed_classic_bridge)");
  }
  throw Error(ErrorCode::BadInput, "unknown embedding kind");
}

PotentialModel embed_perron(const std::vector<double>& a) {
  require_size4_finite(a, "the Perron embedding");
  for (double v : a) {
    if (!(v > 0.0)) {
      throw Error(ErrorCode::EmbeddingDegenerate,
                  "the Perron embedding requires strictly positive entries");
    }
  }
  const ComplexMatrix v1{{1.0, 1.0}, {0.0, 0.0}};
  const ComplexMatrix v2{{0.0, 0.0}, {1.0, 1.0}};
  const ComplexMatrix h1 =
      ComplexMatrix::diagonal(std::vector<double>{std::sqrt(a[0]), std::sqrt(a[1])});
  const ComplexMatrix h2 =
      ComplexMatrix::diagonal(std::vector<double>{std::sqrt(a[2]), std::sqrt(a[3])});
  return PotentialModel{KrausFamily({v1, v2}), KrausFamily({h1, h2})};
}

BridgeModel embed_classic_bridge(const std::vector<double>& a,
                                 const StochasticMatrix& q) {
  require_size4_finite(a, "the classic-inequality bridge");
  require_2x2_positive(q, "bridge");
  std::vector<ComplexMatrix> dynamics;
  std::vector<ComplexMatrix> weights;
  std::vector<ComplexMatrix> potential;
  dynamics.reserve(4);
  weights.reserve(4);
  potential.reserve(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ComplexMatrix v(2);
      v(i, j) = 1.0;
      dynamics.push_back(v);

      ComplexMatrix w(2);
      w(i, j) = std::sqrt(q.p(i, j));
      weights.push_back(w);

      // Rank-one potential: row i filled with √exp(a_ij), so that
      // tr(HρH†) = exp(a_ij) on any trace-one diagonal state.
      ComplexMatrix h(2);
      const double scale = std::sqrt(std::exp(a[static_cast<std::size_t>(i) * 2 + j]));
      h(i, 0) = scale;
      h(i, 1) = scale;
      potential.push_back(h);
    }
  }
  return BridgeModel{
      QifsModel::make(KrausFamily(std::move(dynamics)), KrausFamily(std::move(weights))),
      KrausFamily(std::move(potential))};
}

KrausFamily elementary_embedding_family(const StochasticMatrix& p) {
  const int dim = p.dim();
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      ComplexMatrix v(dim);
      v(i, j) = std::sqrt(p.p(i, j));
      ops.push_back(v);
    }
  }
  return KrausFamily(std::move(ops));
}

double markov_power_identity(const StochasticMatrix& p, int n,
                             std::uint64_t seed, int samples) {
  if (n < 1 || n > 10000) {
    throw Error(ErrorCode::BadInput, "power identity needs 1 <= n <= 10000");
  }
  if (samples < 1) {
    throw Error(ErrorCode::BadInput, "power identity needs samples >= 1");
  }
  const KrausFamily single = elementary_embedding_family(p);
  const KrausFamily powered = elementary_embedding_family(p.power(n));
  SplitRng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const DensityMatrix rho = random_density(p.dim(), rng);
    DensityMatrix iterated = rho;
    for (int t = 0; t < n; ++t) iterated = lambda_homogeneous(single, iterated);
    const DensityMatrix direct = lambda_homogeneous(powered, rho);
    worst = std::max(worst, distance_hs(iterated, direct));
  }
  return worst;
}

PotentialModel scalar_weight_chain_model(const StochasticMatrix& p,
                                         const std::vector<double>& q) {
  require_2x2_positive(p, "scalar-weight chain");
  if (q.size() != 4) {
    throw Error(ErrorCode::BadInput, "scalar-weight chain takes 4 weights");
  }
  std::vector<ComplexMatrix> dynamics;
  std::vector<ComplexMatrix> potential;
  dynamics.reserve(4);
  potential.reserve(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double weight = q[static_cast<std::size_t>(i) * 2 + j];
      if (!std::isfinite(weight) || weight < 0.0) {
        throw Error(ErrorCode::BadInput,
                    "scalar branch weights must be finite and >= 0");
      }
      ComplexMatrix v(2);
      v(i, j) = p.p(i, j);  // literal entries, not square roots
      dynamics.push_back(v);
      potential.push_back(std::sqrt(weight) * ComplexMatrix::identity(2));
    }
  }
  return PotentialModel{KrausFamily(std::move(dynamics)),
                        KrausFamily(std::move(potential))};
}

std::vector<double> reciprocal_branch_weights(const StochasticMatrix& p) {
  require_2x2_positive(p, "reciprocal-weight");
  return {1.0 / p.p(0, 0), 1.0 / p.p(0, 1), 1.0 / p.p(1, 0), 1.0 / p.p(1, 1)};
}

std::vector<double> parameterized_branch_weights(const StochasticMatrix& p,
                                                 double q00, double q10) {
  require_2x2_positive(p, "parameterized-weight");
  if (!(q00 >= 0.0) || !(q10 >= 0.0)) {
    throw Error(ErrorCode::BadInput, "free weights must be >= 0");
  }
  const double q01 = (1.0 - q00 * p.p(0, 0) * p.p(0, 0)) / (p.p(0, 1) * p.p(1, 0));
  const double q11 = (1.0 - q10 * p.p(1, 0) * p.p(0, 1)) / (p.p(1, 1) * p.p(1, 1));
  if (q01 < 0.0 || q11 < 0.0) {
    throw Error(ErrorCode::BadInput,
                "free weights too large: derived weights would be negative");
  }
  return {q00, q01, q10, q11};
}

}  // namespace qifs
