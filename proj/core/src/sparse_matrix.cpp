#include "gl1hom/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace gl1hom {

SparseIntMatrix::SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<long>>& rows) {
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  SparseIntMatrix m(rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t c = 0; c < ncols; ++c) {
      if (rows[r][c] != 0) m.data_[r].push_back({static_cast<std::uint32_t>(c), BigInt(rows[r][c])});
    }
  }
  return m;
}

SparseIntMatrix SparseIntMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseIntMatrix m(rows, cols);
  for (std::size_t i = 0; i < triplets.size();) {
    const auto& first = triplets[i];
    if (first.row >= rows || first.col >= cols) throw std::out_of_range("triplet index out of range");
    BigInt sum = first.value;
    std::size_t j = i + 1;
    for (; j < triplets.size() && triplets[j].row == first.row && triplets[j].col == first.col; ++j) sum += triplets[j].value;
    if (sum != 0) m.data_[first.row].push_back({first.col, std::move(sum)});
    i = j;
  }
  return m;
}

SparseIntMatrix SparseIntMatrix::identity(std::size_t n) {
  SparseIntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({static_cast<std::uint32_t>(i), BigInt(1)});
  return m;
}

std::size_t SparseIntMatrix::nnz() const noexcept {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

void SparseIntMatrix::add(std::size_t r, std::size_t c, const BigInt& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseIntMatrix::add index out of range");
  if (v == 0) return;
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t col) { return e.col < col; });
  if (it != row.end() && it->col == c) {
    it->value += v;
    if (it->value == 0) row.erase(it);
  } else {
    row.insert(it, Entry{static_cast<std::uint32_t>(c), v});
  }
}

BigInt SparseIntMatrix::at(std::size_t r, std::size_t c) const {
  const auto& row = data_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t col) { return e.col < col; });
  return (it != row.end() && it->col == c) ? it->value : BigInt(0);
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : data_[r]) t.data_[e.col].push_back({static_cast<std::uint32_t>(r), e.value});
  }
  return t;
}

SparseIntMatrix SparseIntMatrix::operator*(const SparseIntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("SparseIntMatrix product: dimension mismatch");
  SparseIntMatrix out(rows_, rhs.cols_);
  std::vector<BigInt> acc(rhs.cols_);
  std::vector<char> touched(rhs.cols_, 0);
  std::vector<std::uint32_t> cols;
  for (std::size_t r = 0; r < rows_; ++r) {
    cols.clear();
    for (const auto& a : data_[r]) {
      for (const auto& b : rhs.data_[a.col]) {
        if (!touched[b.col]) {
          touched[b.col] = 1;
          cols.push_back(b.col);
          acc[b.col] = 0;
        }
        acc[b.col] += a.value * b.value;
      }
    }
    std::sort(cols.begin(), cols.end());
    for (auto c : cols) {
      if (acc[c] != 0) out.data_[r].push_back({c, acc[c]});
      touched[c] = 0;
    }
  }
  return out;
}

std::vector<BigInt> SparseIntMatrix::operator*(std::span<const BigInt> x) const {
  if (x.size() != cols_) throw std::invalid_argument("SparseIntMatrix * vector: dimension mismatch");
  std::vector<BigInt> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : data_[r]) y[r] += e.value * x[e.col];
  }
  return y;
}

SparseIntMatrix SparseIntMatrix::operator-() const {
  SparseIntMatrix out = *this;
  for (auto& row : out.data_) {
    for (auto& e : row) e.value = -e.value;
  }
  return out;
}

bool SparseIntMatrix::operator==(const SparseIntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (data_[r].size() != o.data_[r].size()) return false;
    for (std::size_t i = 0; i < data_[r].size(); ++i) {
      if (data_[r][i].col != o.data_[r][i].col || data_[r][i].value != o.data_[r][i].value) return false;
    }
  }
  return true;
}

std::vector<std::vector<BigInt>> SparseIntMatrix::to_dense() const {
  std::vector<std::vector<BigInt>> d(rows_, std::vector<BigInt>(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : data_[r]) d[r][e.col] = e.value;
  }
  return d;
}

}  // namespace gl1hom
