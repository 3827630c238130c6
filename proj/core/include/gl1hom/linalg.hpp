#ifndef GL1HOM_LINALG_HPP
#define GL1HOM_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gl1hom/arith.hpp"
#include "gl1hom/sparse_matrix.hpp"

namespace gl1hom {

/// Matrices with both dimensions at or below this use dense elimination.
inline constexpr std::size_t kDenseRankThreshold = 64;

/// Exact rank over Q. Sparse fraction-free elimination with a Markowitz-style
/// pivot choice; small matrices go through dense Bareiss elimination.
std::size_t rank_rational(const SparseIntMatrix& m, std::size_t dense_threshold = kDenseRankThreshold);

/// Rank of m reduced mod p. Throws Error{NotPrime}.
std::size_t rank_modp(const SparseIntMatrix& m, std::uint64_t p);

/// Dense Bareiss elimination; consumes its argument.
std::size_t rank_bareiss(std::vector<std::vector<BigInt>> a);

/// Reusable solver for a square integer system whose solutions are expected
/// to be integral. Factorizes once modulo a 62-bit prime; each solution is
/// lifted and then checked exactly against g, with an exact rational
/// elimination as fallback.
class IntegralSolver {
 public:
  /// Throws Error{Singular} if g is singular over Q.
  explicit IntegralSolver(const SparseIntMatrix& g);

  std::size_t size() const noexcept { return n_; }

  /// Unique x with g*x = y. Throws Error{NonIntegral} if x is not integral.
  std::vector<BigInt> solve(std::span<const BigInt> y) const;

 private:
  bool verify(std::span<const std::int64_t> x, std::span<const BigInt> y) const;
  std::vector<BigInt> solve_exact(std::span<const BigInt> y) const;

  std::size_t n_ = 0;
  SparseIntMatrix g_;
  bool modular_ok_ = false;
  std::vector<std::uint64_t> lu_;  // row-major, unit lower triangle implicit
  std::vector<std::uint32_t> perm_;
  // g_ with int64 entries, when every entry fits; speeds up verification.
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> small_;
  bool small_ok_ = false;
};

/// One-shot form of IntegralSolver.
std::vector<BigInt> solve_integral(const SparseIntMatrix& g, std::span<const BigInt> y);

}  // namespace gl1hom

#endif  // GL1HOM_LINALG_HPP
