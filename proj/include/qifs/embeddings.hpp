#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qifs/kraus.hpp"
#include "qifs/stochastic.hpp"

namespace qifs {

// The ways a classical matrix is lifted to a QIFS on 2×2 density matrices.
// Hom*/NonHom* lift a column-stochastic P (and Q for the nonhomogeneous
// variants); PerronPotential lifts a positive matrix into a transfer-operator
// eigenproblem; ClassicBridge lifts a (real matrix, stochastic matrix) pair
// into the coordinate-form pressure inequality.
enum class EmbeddingKind {
  Hom4,
  NonHom4,
  Hom2,
  NonHom2,
  PerronPotential,
  ClassicBridge,
};

int embedding_arity(EmbeddingKind kind);
const char* embedding_kind_name(EmbeddingKind kind);
// Accepts the lowercase names hom4, nonhom4, hom2, nonhom2, perron, bridge.
EmbeddingKind embedding_kind_from_name(const std::string& name);

// Dynamics-with-potential pair (V_i, H_i) feeding the transfer-operator
// eigenproblem; there is no weight family until one is chosen downstream.
struct PotentialModel {
  KrausFamily dynamics;
  KrausFamily potential;
};

// QIFS whose branch maps scatter the entries of a 2×2 stochastic matrix P
// across Kraus operators (√p entries); the nonhomogeneous variants draw the
// weight family from a second stochastic matrix Q the same way. Entries of P
// (and Q) must be strictly positive. Only the four stochastic kinds are
// accepted here.
QifsModel embed_stochastic(const StochasticMatrix& p, EmbeddingKind kind);
QifsModel embed_stochastic(const StochasticMatrix& p,
                           const StochasticMatrix& q, EmbeddingKind kind);

// Perron eigenproblem lift: V_1/V_2 sum rows, H_i = diag(√a_i0, √a_i1).
// Solving the transfer eigenproblem for the result returns the dominant
// eigenvalue of A with diag(ρ_β) its normalized Perron vector. A is given
// row-major and must be entrywise positive.
PotentialModel embed_perron(const std::vector<double>& a);

// Classic-inequality lift: elementary-unit dynamics, weights carrying √q,
// and rank-one potentials carrying √exp(a) entries. A is any finite real 2×2
// matrix (row-major) — the lift exponentiates it — and Q must be a strictly
// positive column-stochastic 2×2 matrix.
struct BridgeModel {
  QifsModel model;
  KrausFamily potential;
};
BridgeModel embed_classic_bridge(const std::vector<double>& a,
                                 const StochasticMatrix& q);

// The order-n elementary lift V_(i,j) = √p_ij |i⟩⟨j| in row-major branch
// order; normalized whenever P is column-stochastic. Zero entries are
// allowed (no logarithms are taken here).
KrausFamily elementary_embedding_family(const StochasticMatrix& p);

// Max over a deterministic random sample of density matrices of
// D_1(Λ_P applied n times, Λ_{P^n} applied once) for the elementary lift;
// identically zero in exact arithmetic.
double markov_power_identity(const StochasticMatrix& p, int n,
                             std::uint64_t seed = 20240801,
                             int samples = 20);

// Scalar-weight transfer model for a 2×2 chain: dynamics carry the literal
// entries of P in the 4-matrix pattern and the potential is H_i = √q_i · I.
// With admissible weights the dominant transfer eigenvalue is 1 and the
// eigenstate is diag(stationary vector of P).
PotentialModel scalar_weight_chain_model(const StochasticMatrix& p,
                                         const std::vector<double>& q);

// Reciprocal weights q_(i,j) = 1/p_ij (row-major), the choice that maps the
// chain's stationary vector onto the transfer fixed point directly.
std::vector<double> reciprocal_branch_weights(const StochasticMatrix& p);

// Two-parameter family with the same fixed point: free q_(0,0) and q_(1,0),
// with q_(0,1) = (1 − q_(0,0)·p00²)/(p01·p10) and
// q_(1,1) = (1 − q_(1,0)·p10·p01)/p11². Weights must come out nonnegative
// for the dominant eigenvalue to stay at 1.
std::vector<double> parameterized_branch_weights(const StochasticMatrix& p,
                                                 double q00, double q10);

}  // namespace qifs
