#include "qifs/complex_matrix.hpp"

#include <cmath>
#include <cstddef>

#include "qifs/errors.hpp"

namespace qifs {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DegenerateBranch: return "DegenerateBranch";
    case ErrorCode::ZeroImage: return "ZeroImage";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::EmbeddingDegenerate: return "EmbeddingDegenerate";
    case ErrorCode::CoordinateDegenerate: return "CoordinateDegenerate";
    case ErrorCode::DegeneratePotential: return "DegeneratePotential";
    case ErrorCode::Infeasible: return "Infeasible";
  }
  return "UnknownError";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadInput:
    case ErrorCode::PreconditionUnmet:
    case ErrorCode::NotNormalized:
    case ErrorCode::EmbeddingDegenerate:
      return true;
    default:
      return false;
  }
}

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
  if (dim < 0) throw Error(ErrorCode::BadInput, "matrix dimension must be nonnegative");
  data_.assign(static_cast<size_t>(dim) * dim, Complex(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  dim_ = static_cast<int>(rows.size());
  data_.reserve(static_cast<size_t>(dim_) * dim_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim_)
      throw Error(ErrorCode::BadInput, "matrix initializer is not square");
    for (const auto& entry : row) data_.push_back(entry);
  }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& entries) {
  ComplexMatrix m(static_cast<int>(entries.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = entries[static_cast<size_t>(i)];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& entries) {
  ComplexMatrix m(static_cast<int>(entries.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = entries[static_cast<size_t>(i)];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw Error(ErrorCode::BadInput, "matrix dimension mismatch in +");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw Error(ErrorCode::BadInput, "matrix dimension mismatch in -");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& x : data_) x *= scalar;
  return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(r, c) = std::conj((*this)(r, c));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

bool ComplexMatrix::is_finite() const {
  for (const auto& x : data_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

std::vector<double> ComplexMatrix::real_diagonal() const {
  std::vector<double> d(static_cast<size_t>(dim_));
  for (int i = 0; i < dim_; ++i) d[static_cast<size_t>(i)] = (*this)(i, i).real();
  return d;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.dim() != rhs.dim()) throw Error(ErrorCode::BadInput, "matrix dimension mismatch in *");
  const int n = lhs.dim();
  ComplexMatrix out(n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const Complex a = lhs(r, k);
      if (a == Complex(0.0, 0.0)) continue;
      for (int c = 0; c < n; ++c) out(r, c) += a * rhs(k, c);
    }
  return out;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(ComplexMatrix m, Complex scalar) { return m *= scalar; }

double max_abs_diff(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.dim() != rhs.dim()) throw Error(ErrorCode::BadInput, "matrix dimension mismatch");
  double m = 0.0;
  for (int r = 0; r < lhs.dim(); ++r)
    for (int c = 0; c < lhs.dim(); ++c) m = std::max(m, std::abs(lhs(r, c) - rhs(r, c)));
  return m;
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  ComplexMatrix out(m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c)
      out(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
  return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
  double d = 0.0;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c)
      d = std::max(d, std::abs(m(r, c) - std::conj(m(c, r))));
  return d;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int na = a.dim(), nb = b.dim();
  ComplexMatrix out(na * nb);
  for (int ra = 0; ra < na; ++ra)
    for (int ca = 0; ca < na; ++ca) {
      const Complex f = a(ra, ca);
      if (f == Complex(0.0, 0.0)) continue;
      for (int rb = 0; rb < nb; ++rb)
        for (int cb = 0; cb < nb; ++cb)
          out(ra * nb + rb, ca * nb + cb) = f * b(rb, cb);
    }
  return out;
}

std::vector<Complex> vec_column_major(const ComplexMatrix& m) {
  std::vector<Complex> v;
  v.reserve(static_cast<size_t>(m.dim()) * m.dim());
  for (int c = 0; c < m.dim(); ++c)
    for (int r = 0; r < m.dim(); ++r) v.push_back(m(r, c));
  return v;
}

ComplexMatrix unvec_column_major(const std::vector<Complex>& v) {
  int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(v.size()))));
  if (static_cast<size_t>(n) * n != v.size())
    throw Error(ErrorCode::BadInput, "vector length is not a perfect square");
  ComplexMatrix m(n);
  size_t idx = 0;
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) m(r, c) = v[idx++];
  return m;
}

}  // namespace qifs
