#include "qifs/power_iteration.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "qifs/errors.hpp"

namespace qifs {

namespace {

using Vec = std::vector<Complex>;

Vec apply(const ComplexMatrix& m, const Vec& v) {
  const int n = m.dim();
  Vec out(static_cast<size_t>(n), Complex(0.0, 0.0));
  for (int r = 0; r < n; ++r) {
    Complex acc = 0.0;
    for (int c = 0; c < n; ++c) acc += m(r, c) * v[static_cast<size_t>(c)];
    out[static_cast<size_t>(r)] = acc;
  }
  return out;
}

double norm2(const Vec& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

Complex dot(const Vec& a, const Vec& b) {  // ⟨a, b⟩ with conjugation on a
  Complex s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

bool entrywise_nonnegative(const ComplexMatrix& m) {
  const double slack = 1e-15 * std::max(1.0, m.max_abs());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) {
      const Complex x = m(r, c);
      if (std::abs(x.imag()) > slack || x.real() < -slack) return false;
    }
  return true;
}

}  // namespace

DominantEigenpair dominant_eigenpair(const ComplexMatrix& m, const PowerConfig& cfg) {
  const int n = m.dim();
  if (n == 0) throw Error(ErrorCode::BadInput, "dominant eigenpair of empty matrix");
  if (!m.is_finite()) throw Error(ErrorCode::BadInput, "matrix has non-finite entries");

  const bool nonneg = entrywise_nonnegative(m);

  // Deterministic seed: all ones plus a small ramp so symmetric cases still
  // overlap the dominant eigenvector.
  Vec v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = 1.0 + 0.01 * i;
  double nv = norm2(v);
  for (auto& x : v) x /= nv;

  Complex lambda = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  long iter = 0;
  int restarts = 0;

  while (iter < cfg.max_iter) {
    ++iter;
    Vec w = apply(m, v);
    const double nw = norm2(w);
    if (nw < 1e-300) {
      // Seed fell into the kernel; restart from a perturbed direction.
      if (++restarts > 3)
        throw Error(ErrorCode::NonConvergence, "power iteration collapsed to zero vector");
      for (int i = 0; i < n; ++i)
        v[static_cast<size_t>(i)] = 1.0 + 0.37 * restarts * (i + 1) + 0.11 * ((i * restarts) % 3);
      nv = norm2(v);
      for (auto& x : v) x /= nv;
      continue;
    }
    lambda = dot(v, w);  // Rayleigh-style estimate with ‖v‖₂ = 1
    double res_sq = 0.0;
    for (size_t i = 0; i < w.size(); ++i) res_sq += std::norm(w[i] - lambda * v[i]);
    residual = std::sqrt(res_sq);
    for (auto& x : w) x /= nw;
    v = std::move(w);
    if (residual <= cfg.tol * std::max(1.0, std::abs(lambda))) break;
  }

  const double scale = std::max(1.0, std::abs(lambda));
  if (residual > 10.0 * cfg.tol * scale)
    throw Error(ErrorCode::NonConvergence,
                "power iteration did not reach tolerance (residual " + std::to_string(residual) + ")");
  if (std::abs(lambda.imag()) > 1e-8 * scale)
    throw Error(ErrorCode::NonConvergence, "dominant eigenvalue is not real");

  // Fix the global phase via the largest component, producing a real vector.
  size_t imax = 0;
  for (size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  const Complex phase = std::abs(v[imax]) > 0 ? std::conj(v[imax]) / std::abs(v[imax]) : Complex(1.0, 0.0);

  DominantEigenpair out;
  out.value = lambda.real();
  out.iterations = iter;
  out.residual = residual;
  out.vector.resize(static_cast<size_t>(n));
  for (size_t i = 0; i < v.size(); ++i) out.vector[i] = (phase * v[i]).real();

  if (nonneg) {
    double sum = 0.0;
    for (auto& x : out.vector) {
      if (x < 0.0 && x > -1e-9) x = 0.0;
      sum += x;
    }
    if (sum <= 0.0)
      throw Error(ErrorCode::NonConvergence, "nonnegative matrix produced a sign-indefinite vector");
    for (auto& x : out.vector) x /= sum;  // unit 1-norm, nonnegative
  }
  return out;
}

}  // namespace qifs
