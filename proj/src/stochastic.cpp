#include "qifs/stochastic.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "qifs/complex_matrix.hpp"
#include "qifs/errors.hpp"
#include "qifs/power_iteration.hpp"

namespace qifs {

StochasticMatrix::StochasticMatrix(int dim, std::vector<double> entries,
                                   double column_tol)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ < 1) {
    throw Error(ErrorCode::BadInput, "stochastic matrix needs dim >= 1");
  }
  if (entries_.size() != static_cast<std::size_t>(dim_) * dim_) {
    throw Error(ErrorCode::BadInput,
                "stochastic matrix entry count does not match its dimension");
  }
  for (int c = 0; c < dim_; ++c) {
    double column_sum = 0.0;
    for (int r = 0; r < dim_; ++r) {
      const double v = p(r, c);
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorCode::BadInput,
                    "stochastic matrix entries must be finite and >= 0");
      }
      column_sum += v;
    }
    if (std::abs(column_sum - 1.0) > column_tol) {
      char msg[128];
      std::snprintf(msg, sizeof(msg),
                    "column %d of a stochastic matrix sums to %.17g, not 1",
                    c, column_sum);
      throw Error(ErrorCode::BadInput, msg);
    }
  }
}

StochasticMatrix StochasticMatrix::uniform(int dim) {
  return StochasticMatrix(
      dim, std::vector<double>(static_cast<std::size_t>(dim) * dim,
                               1.0 / static_cast<double>(dim)));
}

StochasticMatrix StochasticMatrix::multiply(const StochasticMatrix& other) const {
  if (other.dim_ != dim_) {
    throw Error(ErrorCode::BadInput,
                "stochastic matrix product needs matching dimensions");
  }
  std::vector<double> out(static_cast<std::size_t>(dim_) * dim_, 0.0);
  for (int r = 0; r < dim_; ++r) {
    for (int k = 0; k < dim_; ++k) {
      const double prk = p(r, k);
      if (prk == 0.0) continue;
      for (int c = 0; c < dim_; ++c) {
        out[static_cast<std::size_t>(r) * dim_ + c] += prk * other.p(k, c);
      }
    }
  }
  // Re-normalize the columns exactly: the product of column-stochastic
  // matrices is column-stochastic, so this only removes accumulated rounding.
  for (int c = 0; c < dim_; ++c) {
    double column_sum = 0.0;
    for (int r = 0; r < dim_; ++r) column_sum += out[static_cast<std::size_t>(r) * dim_ + c];
    for (int r = 0; r < dim_; ++r) out[static_cast<std::size_t>(r) * dim_ + c] /= column_sum;
  }
  return StochasticMatrix(dim_, std::move(out));
}

StochasticMatrix StochasticMatrix::power(int n) const {
  if (n < 1) {
    throw Error(ErrorCode::BadInput, "stochastic matrix power needs n >= 1");
  }
  StochasticMatrix result = *this;
  for (int i = 1; i < n; ++i) result = result.multiply(*this);
  return result;
}

bool StochasticMatrix::is_irreducible() const {
  // Reachability closure: (I+P)^dim has a positive (r,c) entry iff c reaches
  // r in at most dim steps. Nonnegative arithmetic cannot cancel, so exact
  // zeros stay structural.
  const std::size_t n = static_cast<std::size_t>(dim_);
  std::vector<double> acc(n * n, 0.0);
  std::vector<double> base(n * n, 0.0);
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      base[r * n + c] = p(r, c) + (r == c ? 1.0 : 0.0);
      acc[r * n + c] = base[r * n + c];
    }
  }
  for (int step = 1; step < dim_; ++step) {
    std::vector<double> next(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = 0; k < n; ++k) {
        const double a = acc[r * n + k];
        if (a == 0.0) continue;
        for (std::size_t c = 0; c < n; ++c) next[r * n + c] += a * base[k * n + c];
      }
    }
    acc = std::move(next);
  }
  for (double v : acc) {
    if (!(v > 0.0)) return false;
  }
  return true;
}

bool StochasticMatrix::entries_positive(double floor) const {
  for (double v : entries_) {
    if (!(v > floor)) return false;
  }
  return true;
}

std::vector<double> stationary_closed_form_2x2(const StochasticMatrix& p) {
  if (p.dim() != 2) {
    throw Error(ErrorCode::BadInput, "closed form is for 2x2 matrices");
  }
  const double denom = p.p(0, 1) - p.p(0, 0) + 1.0;
  if (!(denom > 0.0)) {
    throw Error(ErrorCode::Reducible,
                "2x2 chain has no positive stationary normalizer");
  }
  return {p.p(0, 1) / denom, (1.0 - p.p(0, 0)) / denom};
}

std::vector<double> stationary_vector(const StochasticMatrix& p) {
  if (!p.is_irreducible()) {
    throw Error(ErrorCode::Reducible,
                "stationary vector requires an irreducible chain");
  }
  const int dim = p.dim();
  // (I+P)/2 shares P's stationary vector, is aperiodic, and keeps the
  // dominant eigenvalue simple, so plain power iteration converges.
  ComplexMatrix lazy(dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      lazy(r, c) = Complex(0.5 * (p.p(r, c) + (r == c ? 1.0 : 0.0)), 0.0);
    }
  }
  PowerConfig config;
  config.tol = 1e-14;
  const DominantEigenpair pair = dominant_eigenpair(lazy, config);
  std::vector<double> pi = pair.vector;
  double total = 0.0;
  for (double& v : pi) {
    if (v < 0.0) v = 0.0;  // clamp power-iteration round-off
    total += v;
  }
  for (double& v : pi) v /= total;
  if (dim == 2) {
    const std::vector<double> closed = stationary_closed_form_2x2(p);
    for (int i = 0; i < 2; ++i) {
      if (std::abs(pi[i] - closed[i]) > 1e-9) {
        throw Error(ErrorCode::NonConvergence,
                    "stationary iterate disagrees with the 2x2 closed form");
      }
    }
    return closed;
  }
  return pi;
}

StochasticMatrix stationary_limit_matrix(const StochasticMatrix& p) {
  const std::vector<double> pi = stationary_vector(p);
  const int dim = p.dim();
  std::vector<double> entries(static_cast<std::size_t>(dim) * dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      entries[static_cast<std::size_t>(r) * dim + c] = pi[r];
    }
  }
  return StochasticMatrix(dim, std::move(entries));
}

StochasticMatrix random_column_stochastic(int dim, SplitRng& rng,
                                          double min_entry) {
  std::vector<double> entries(static_cast<std::size_t>(dim) * dim);
  for (int c = 0; c < dim; ++c) {
    const std::vector<double> column =
        random_probability_vector(dim, rng, min_entry);
    for (int r = 0; r < dim; ++r) {
      entries[static_cast<std::size_t>(r) * dim + c] = column[r];
    }
  }
  return StochasticMatrix(dim, std::move(entries));
}

}  // namespace qifs
