#include "qifs/kraus.hpp"

#include <sstream>

#include "qifs/errors.hpp"

namespace qifs {

KrausFamily::KrausFamily(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw Error(ErrorCode::BadInput, "operator family must be nonempty");
  const int n = ops_.front().dim();
  if (n == 0) throw Error(ErrorCode::BadInput, "operator family has empty matrices");
  for (const auto& k : ops_) {
    if (k.dim() != n)
      throw Error(ErrorCode::BadInput, "operator family has mismatched dimensions");
    if (!k.is_finite())
      throw Error(ErrorCode::BadInput, "operator family has non-finite entries");
  }
}

const ComplexMatrix& KrausFamily::op(int i) const {
  if (i < 0 || i >= arity())
    throw Error(ErrorCode::BadInput, "branch index out of range");
  return ops_[static_cast<size_t>(i)];
}

ComplexMatrix KrausFamily::gram_sum() const {
  ComplexMatrix acc(dim());
  for (const auto& k : ops_) acc += k.adjoint() * k;
  return hermitize(acc);
}

double KrausFamily::normalization_defect() const {
  return max_abs_diff(gram_sum(), ComplexMatrix::identity(dim()));
}

KrausFamily KrausFamily::scaled(Complex factor) const {
  std::vector<ComplexMatrix> out;
  out.reserve(ops_.size());
  for (const auto& k : ops_) out.push_back(factor * k);
  return KrausFamily(std::move(out));
}

QifsModel QifsModel::make(KrausFamily dynamics, KrausFamily weights, double norm_tol) {
  if (dynamics.dim() != weights.dim())
    throw Error(ErrorCode::BadInput, "dynamics and weight families have different dimensions");
  if (dynamics.arity() != weights.arity())
    throw Error(ErrorCode::BadInput, "dynamics and weight families have different arities");
  const double defect = weights.normalization_defect();
  if (defect > norm_tol) {
    std::ostringstream os;
    os << "weight family is not normalized (defect " << defect << ")";
    throw Error(ErrorCode::NotNormalized, os.str());
  }
  return QifsModel{std::move(dynamics), std::move(weights)};
}

QifsModel QifsModel::homogeneous(KrausFamily dynamics, double norm_tol) {
  KrausFamily copy = dynamics;
  return make(std::move(dynamics), std::move(copy), norm_tol);
}

}  // namespace qifs
