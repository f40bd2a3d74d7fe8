#include "qifs/words.hpp"

#include <cmath>
#include <functional>

#include "qifs/entropy.hpp"
#include "qifs/errors.hpp"

namespace qifs {

namespace {

void check_enumeration_size(int arity, int n) {
  if (n < 0) throw Error(ErrorCode::BadInput, "word length must be nonnegative");
  if (std::pow(static_cast<double>(arity), n) > kWordEnumerationCap)
    throw Error(ErrorCode::CapExceeded,
                "word enumeration k^n exceeds the cap of 1e6 (k = " + std::to_string(arity) +
                    ", n = " + std::to_string(n) + ")");
}

// Depth-first walk over all words of length n. Subtrees below a floored
// probability are pruned: by the zero-propagation convention every extension
// of a vanished word has probability zero.
void walk_words(const QifsModel& m, const DensityMatrix& rho, int n,
                const std::function<void(double, const DensityMatrix&)>& leaf) {
  struct Rec {
    const QifsModel& m;
    int n;
    const std::function<void(double, const DensityMatrix&)>& leaf;
    void operator()(int depth, double p, const DensityMatrix& x) const {
      if (depth == n) {
        leaf(p, x);
        return;
      }
      for (int i = 0; i < m.arity(); ++i) {
        const double pi = branch_prob(m, i, x);
        if (pi <= kBranchFloor) continue;
        (*this)(depth + 1, p * pi, branch_map(m, i, x));
      }
    }
  };
  Rec rec{m, n, leaf};
  rec(0, 1.0, rho);
}

}  // namespace

WordResult word_prob_and_map(const QifsModel& m, const Word& word, const DensityMatrix& rho) {
  WordResult out;
  out.image = rho;
  out.prob = 1.0;
  DensityMatrix x = rho;
  for (int letter : word) {
    const double p = branch_prob(m, letter, x);
    if (p <= kBranchFloor) {
      out.prob = 0.0;
      out.vanished = true;
      out.image = rho;  // placeholder; meaningless at probability zero
      return out;
    }
    out.prob *= p;
    x = branch_map(m, letter, x);
  }
  out.image = std::move(x);
  return out;
}

double partial_entropy(const QifsModel& m, const DensityMatrix& rho, int n) {
  if (n == 0) return 0.0;
  check_enumeration_size(m.arity(), n);
  double h = 0.0;
  walk_words(m, rho, n, [&](double p, const DensityMatrix&) { h += eta(p); });
  return h;
}

double iterated_dual_entropy(const QifsModel& m, const DensityMatrix& rho, int n) {
  if (n == 0) return shannon_branch_entropy(m, rho);
  check_enumeration_size(m.arity(), n);
  double acc = 0.0;
  walk_words(m, rho, n,
             [&](double p, const DensityMatrix& x) { acc += p * shannon_branch_entropy(m, x); });
  return acc;
}

double word_probability_sum(const QifsModel& m, const DensityMatrix& rho, int n) {
  check_enumeration_size(m.arity(), n);
  double s = 0.0;
  walk_words(m, rho, n, [&](double p, const DensityMatrix&) { s += p; });
  return s;
}

}  // namespace qifs
