#ifndef GL1HOM_EVAL_HPP
#define GL1HOM_EVAL_HPP

#include <vector>

#include "gl1hom/arith.hpp"
#include "gl1hom/durbasis.hpp"
#include "gl1hom/sparse_matrix.hpp"

namespace gl1hom {

/// Pairwise-distinct values for x_1..x_k.
struct GenericPoint {
  std::vector<Rational> x;

  /// x_i = i.
  static GenericPoint standard(int k);
  /// x_i = i-th prime.
  static GenericPoint primes(int k);
  bool is_generic() const;
};

/// 1-evaluation of a decorated resolution. Zero unless the dot degree equals
/// the dumbbell count; otherwise the transfer trace at x_i = i, computed in
/// scaled integers. Throws Error{NonIntegerEvaluation} if the exact value is
/// not an integer.
BigInt evaluate1(const Decoration& dec);

/// Same quantity, with exact rationals at an arbitrary generic point.
BigInt evaluate1_at(const Decoration& dec, const GenericPoint& point);

/// evaluate1 of the merged decoration. Throws Error{ResolutionMismatch}.
BigInt pairing(const Decoration& a, const Decoration& b);

struct GramMatrix {
  Signature signature;
  SparseIntMatrix matrix;  // 2^t square, d.u.r. order
};

/// Gram matrix of the d.u.r. basis, memoized by signature.
GramMatrix gram(const Resolution& res);

/// Reference Gram matrix built from individual evaluate1 calls; no caching.
SparseIntMatrix gram_direct(const ResolutionPtr& res);

}  // namespace gl1hom

#endif  // GL1HOM_EVAL_HPP
