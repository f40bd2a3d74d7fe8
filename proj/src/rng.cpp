#include "qifs/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "qifs/errors.hpp"

namespace qifs {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// Column-wise modified Gram-Schmidt with a second pass for stability.
// Columns must be linearly independent (Gaussian draws are, a.s.).
void orthonormalize_columns(std::vector<std::vector<Complex>>& cols) {
  const std::size_t n = cols.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        Complex overlap(0.0, 0.0);
        for (std::size_t r = 0; r < cols[j].size(); ++r) {
          overlap += std::conj(cols[i][r]) * cols[j][r];
        }
        for (std::size_t r = 0; r < cols[j].size(); ++r) {
          cols[j][r] -= overlap * cols[i][r];
        }
      }
    }
    double norm_sq = 0.0;
    for (const Complex& v : cols[j]) norm_sq += std::norm(v);
    const double norm = std::sqrt(norm_sq);
    if (!(norm > 0.0)) {
      throw Error(ErrorCode::BadInput,
                  "rank-deficient matrix cannot be orthonormalized");
    }
    for (Complex& v : cols[j]) v /= norm;
  }
}

}  // namespace

SplitRng::SplitRng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed + kGolden * (stream + 1))) {}

std::uint64_t SplitRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double SplitRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SplitRng::next_gaussian() {
  const double u1 = 1.0 - next_double();  // (0, 1]; keeps the log finite
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

std::uint64_t SplitRng::next_below(std::uint64_t bound) {
  if (bound == 0) {
    throw Error(ErrorCode::BadInput, "next_below requires a positive bound");
  }
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t draw = next_u64();
  while (draw >= limit) draw = next_u64();
  return draw % bound;
}

SplitRng SplitRng::split(std::uint64_t child) const {
  return SplitRng(mix64(state_) ^ mix64(child + 1), child);
}

ComplexMatrix random_gaussian_matrix(int dim, SplitRng& rng) {
  ComplexMatrix g(dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const double re = rng.next_gaussian();
      const double im = rng.next_gaussian();
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix random_hermitian(int dim, SplitRng& rng) {
  return hermitize(random_gaussian_matrix(dim, rng));
}

DensityMatrix random_density(int dim, SplitRng& rng) {
  const ComplexMatrix g = random_gaussian_matrix(dim, rng);
  return DensityMatrix::trusted(g * g.adjoint());
}

ComplexMatrix random_unitary(int dim, SplitRng& rng) {
  std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) {
      cols[c][r] = Complex(rng.next_gaussian(), rng.next_gaussian());
    }
  }
  orthonormalize_columns(cols);
  ComplexMatrix u(dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) u(r, c) = cols[c][r];
  }
  return u;
}

KrausFamily random_normalized_family(int arity, int dim, SplitRng& rng) {
  if (arity < 1 || dim < 1) {
    throw Error(ErrorCode::BadInput,
                "weight family needs positive arity and dimension");
  }
  const int rows = arity * dim;
  std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(rows));
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < rows; ++r) {
      cols[c][r] = Complex(rng.next_gaussian(), rng.next_gaussian());
    }
  }
  orthonormalize_columns(cols);
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(arity);
  for (int b = 0; b < arity; ++b) {
    ComplexMatrix w(dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) w(r, c) = cols[c][b * dim + r];
    }
    blocks.push_back(w);
  }
  return KrausFamily(std::move(blocks));
}

std::vector<double> random_probability_vector(int dim, SplitRng& rng,
                                              double min_entry) {
  if (dim < 1) {
    throw Error(ErrorCode::BadInput, "probability vector needs dim >= 1");
  }
  if (min_entry < 0.0 || min_entry * dim > 1.0) {
    throw Error(ErrorCode::BadInput,
                "min_entry must lie in [0, 1/dim] for a probability vector");
  }
  std::vector<double> p(dim);
  double total = 0.0;
  for (double& v : p) {
    v = -std::log(1.0 - rng.next_double());
    total += v;
  }
  for (double& v : p) v /= total;
  if (min_entry > 0.0) {
    const double shrink = 1.0 - min_entry * dim;
    for (double& v : p) v = shrink * v + min_entry;
  }
  return p;
}

}  // namespace qifs
