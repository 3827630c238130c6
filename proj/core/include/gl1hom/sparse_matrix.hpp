#ifndef GL1HOM_SPARSE_MATRIX_HPP
#define GL1HOM_SPARSE_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gl1hom/arith.hpp"

namespace gl1hom {

/// Row-compressed integer matrix. Rows keep their entries sorted by column;
/// zero values are never stored and each (row, col) appears at most once.
class SparseIntMatrix {
 public:
  struct Entry {
    std::uint32_t col;
    BigInt value;
  };

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols);

  struct Triplet {
    std::uint32_t row;
    std::uint32_t col;
    BigInt value;
  };

  static SparseIntMatrix from_dense(const std::vector<std::vector<long>>& rows);
  /// Duplicate (row, col) pairs are summed; entries that cancel are dropped.
  static SparseIntMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
  static SparseIntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept;
  bool is_zero() const noexcept { return nnz() == 0; }

  /// Adds v to entry (r, c); drops the entry if the sum is zero.
  void add(std::size_t r, std::size_t c, const BigInt& v);
  BigInt at(std::size_t r, std::size_t c) const;
  std::span<const Entry> row(std::size_t r) const { return data_[r]; }

  SparseIntMatrix transpose() const;
  SparseIntMatrix operator*(const SparseIntMatrix& rhs) const;
  std::vector<BigInt> operator*(std::span<const BigInt> x) const;
  SparseIntMatrix operator-() const;
  bool operator==(const SparseIntMatrix& o) const;

  std::vector<std::vector<BigInt>> to_dense() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> data_;
};

}  // namespace gl1hom

#endif  // GL1HOM_SPARSE_MATRIX_HPP
