#include "qifs/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qifs/errors.hpp"

namespace qifs {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// One Jacobi rotation zeroing a(p,q). Returns the plane rotation
// J = I except J(p,p)=c, J(p,q)=s·u, J(q,p)=-s·conj(u), J(q,q)=c,
// chosen so that (J† a J)(p,q) = 0.
ComplexMatrix plane_rotation(const ComplexMatrix& a, int p, int q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  ComplexMatrix j = ComplexMatrix::identity(a.dim());
  if (r == 0.0) return j;
  const Complex u = apq / r;
  const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
  double t;
  if (tau == 0.0) {
    t = 1.0;
  } else {
    t = (tau > 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  j(p, p) = c;
  j(p, q) = s * u;
  j(q, p) = -s * std::conj(u);
  j(q, q) = c;
  return j;
}

}  // namespace

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m) {
  if (m.dim() == 0) throw Error(ErrorCode::BadInput, "eigensystem of empty matrix");
  if (!m.is_finite()) throw Error(ErrorCode::BadInput, "eigensystem of non-finite matrix");

  const int n = m.dim();
  ComplexMatrix a = hermitize(m);
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(a.max_abs(), 1e-300);
  const double stop = 1e-15 * scale * n;
  const int max_sweeps = 60;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= stop) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= stop / (n * n)) continue;
        ComplexMatrix j = plane_rotation(a, p, q);
        a = j.adjoint() * a * j;
        a = hermitize(a);  // keep rounding noise from accumulating off the real diagonal
        v = v * j;
      }
    }
  }

  HermitianEigensystem out;
  out.values.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out.values[static_cast<size_t>(i)] = a(i, i).real();

  // Sort ascending, permuting eigenvector columns along.
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return out.values[static_cast<size_t>(x)] < out.values[static_cast<size_t>(y)]; });

  std::vector<double> sorted_vals(static_cast<size_t>(n));
  ComplexMatrix sorted_vecs(n);
  for (int i = 0; i < n; ++i) {
    sorted_vals[static_cast<size_t>(i)] = out.values[static_cast<size_t>(order[static_cast<size_t>(i)])];
    for (int r = 0; r < n; ++r) sorted_vecs(r, i) = v(r, order[static_cast<size_t>(i)]);
  }
  out.values = std::move(sorted_vals);
  out.vectors = std::move(sorted_vecs);
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  return hermitian_eigensystem(m).values;
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  return hermitian_eigenvalues(hermitian).front();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  HermitianEigensystem es = hermitian_eigensystem(m);
  const int n = m.dim();
  ComplexMatrix out(n);
  for (int k = 0; k < n; ++k) {
    const double lam = std::max(es.values[static_cast<size_t>(k)], 0.0);
    const double root = std::sqrt(lam);
    if (root == 0.0) continue;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        out(r, c) += root * es.vectors(r, k) * std::conj(es.vectors(c, k));
  }
  return hermitize(out);
}

}  // namespace qifs
