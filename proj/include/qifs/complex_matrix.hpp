#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace qifs {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major storage. Dimensions in this library
// are tiny (state spaces up to 8, superoperators up to 64), so the
// implementation favours clarity over blocking/vectorisation.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
  static ComplexMatrix diagonal(const std::vector<double>& entries);
  static ComplexMatrix diagonal(const std::vector<Complex>& entries);

  int dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  Complex& operator()(int r, int c) { return data_[static_cast<size_t>(r) * dim_ + c]; }
  const Complex& operator()(int r, int c) const {
    return data_[static_cast<size_t>(r) * dim_ + c];
  }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scalar);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;  // entrywise max modulus
  bool is_finite() const;

  std::vector<double> real_diagonal() const;

 private:
  int dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scalar);

// (lhs - rhs) entrywise max modulus, a cheap symmetric distance for checks.
double max_abs_diff(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

// Symmetrises numerical noise: (m + m†)/2.
ComplexMatrix hermitize(const ComplexMatrix& m);

double hermiticity_defect(const ComplexMatrix& m);  // ‖m − m†‖_max

// Kronecker product; the result has dimension dim(a)·dim(b).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Column-major vectorisation and its inverse (dim of the result = sqrt(len)).
std::vector<Complex> vec_column_major(const ComplexMatrix& m);
ComplexMatrix unvec_column_major(const std::vector<Complex>& v);

}  // namespace qifs
