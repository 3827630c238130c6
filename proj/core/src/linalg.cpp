#include "gl1hom/linalg.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <limits>
#include <stdexcept>
#include <utility>

#include "gl1hom/error.hpp"

namespace gl1hom {

namespace {

template <class T>
using Row = std::vector<std::pair<std::uint32_t, T>>;

// Fraction-free row operations over Z. When the pivot divides the entry being
// cleared the target row is not rescaled, which keeps coefficients small on
// the (common) unit pivots.
struct IntegerOps {
  using Value = BigInt;
  struct Coeffs {
    BigInt scale;   // multiplier for the target row
    BigInt factor;  // multiplier for the pivot row (subtracted)
    bool unscaled;
  };

  static bool is_zero(const BigInt& v) { return v == 0; }
  static bool is_unit(const BigInt& v) { return mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0; }
  static std::size_t weight(const BigInt& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); }

  Coeffs prepare(const BigInt& pivot, const BigInt& a) const {
    Coeffs c;
    if (mpz_divisible_p(a.get_mpz_t(), pivot.get_mpz_t())) {
      mpz_divexact(c.factor.get_mpz_t(), a.get_mpz_t(), pivot.get_mpz_t());
      c.scale = 1;
      c.unscaled = true;
    } else {
      BigInt g = gcd(pivot, a);
      mpz_divexact(c.scale.get_mpz_t(), pivot.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(c.factor.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
      c.unscaled = false;
    }
    return c;
  }
  BigInt both(const Coeffs& c, const BigInt& rv, const BigInt& pv) const {
    return c.unscaled ? BigInt(rv - c.factor * pv) : BigInt(c.scale * rv - c.factor * pv);
  }
  BigInt target_only(const Coeffs& c, const BigInt& rv) const { return c.unscaled ? rv : BigInt(c.scale * rv); }
  BigInt pivot_only(const Coeffs& c, const BigInt& pv) const { return BigInt(-(c.factor * pv)); }
  void finish(const Coeffs& c, Row<BigInt>& row) const {
    if (c.unscaled || row.empty()) return;
    BigInt g = 0;
    for (const auto& e : row) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
      if (g == 1) return;
    }
    for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  }
};

// Same elimination in int64 with every operation checked; throws Overflow so
// the caller can restart with BigInt.
struct SmallIntegerOps {
  using Value = std::int64_t;
  struct Overflow {};
  struct Coeffs {
    std::int64_t scale;
    std::int64_t factor;
    bool unscaled;
  };

  static bool is_zero(std::int64_t v) { return v == 0; }
  static bool is_unit(std::int64_t v) { return v == 1 || v == -1; }
  static std::size_t weight(std::int64_t v) {
    const auto u = v < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    return static_cast<std::size_t>(64 - std::countl_zero(u));
  }
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }

  Coeffs prepare(std::int64_t pivot, std::int64_t a) const {
    if (pivot == std::numeric_limits<std::int64_t>::min() || a == std::numeric_limits<std::int64_t>::min())
      throw Overflow{};
    if (a % pivot == 0) return {1, a / pivot, true};
    const std::int64_t g = std::gcd(pivot, a);
    return {pivot / g, a / g, false};
  }
  std::int64_t both(const Coeffs& c, std::int64_t rv, std::int64_t pv) const {
    return c.unscaled ? sub(rv, mul(c.factor, pv)) : sub(mul(c.scale, rv), mul(c.factor, pv));
  }
  std::int64_t target_only(const Coeffs& c, std::int64_t rv) const { return c.unscaled ? rv : mul(c.scale, rv); }
  std::int64_t pivot_only(const Coeffs& c, std::int64_t pv) const { return sub(0, mul(c.factor, pv)); }
  void finish(const Coeffs& c, Row<std::int64_t>& row) const {
    if (c.unscaled || row.empty()) return;
    std::int64_t g = 0;
    for (const auto& e : row) {
      if (e.second == std::numeric_limits<std::int64_t>::min()) return;
      g = std::gcd(g, e.second);
      if (g == 1) return;
    }
    for (auto& e : row) e.second /= g;
  }
};

struct ModOps {
  using Value = std::uint64_t;
  struct Coeffs {
    std::uint64_t factor;
  };

  explicit ModOps(const PrimeField& f) : field(f) {}
  const PrimeField& field;

  static bool is_zero(std::uint64_t v) { return v == 0; }
  bool is_unit(std::uint64_t v) const { return v == 1 || v == field.modulus() - 1; }
  static std::size_t weight(std::uint64_t) { return 0; }

  Coeffs prepare(std::uint64_t pivot, std::uint64_t a) const { return {field.mul(a, field.inv(pivot))}; }
  std::uint64_t both(const Coeffs& c, std::uint64_t rv, std::uint64_t pv) const {
    return field.sub(rv, field.mul(c.factor, pv));
  }
  static std::uint64_t target_only(const Coeffs&, std::uint64_t rv) { return rv; }
  std::uint64_t pivot_only(const Coeffs& c, std::uint64_t pv) const { return field.neg(field.mul(c.factor, pv)); }
  static void finish(const Coeffs&, Row<std::uint64_t>&) {}
};

template <class T>
const T* find_in_row(const Row<T>& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, std::uint32_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

template <class Ops>
std::size_t sparse_rank(std::vector<Row<typename Ops::Value>> rows, std::size_t ncols, const Ops& ops) {
  using Value = typename Ops::Value;
  const std::size_t nrows = rows.size();
  std::vector<std::uint32_t> colcount(ncols, 0);
  std::vector<std::vector<std::uint32_t>> colrows(ncols);
  for (std::uint32_t r = 0; r < nrows; ++r) {
    for (const auto& e : rows[r]) {
      ++colcount[e.first];
      colrows[e.first].push_back(r);
    }
  }
  std::vector<char> active(nrows, 1);
  std::vector<std::uint32_t> stamp(nrows, 0);
  std::uint32_t epoch = 0;

  // Drops stale and duplicate row ids from colrows[c].
  auto compact = [&](std::uint32_t c) {
    ++epoch;
    auto& list = colrows[c];
    std::size_t w = 0;
    for (std::uint32_t r : list) {
      if (!active[r] || stamp[r] == epoch || find_in_row(rows[r], c) == nullptr) continue;
      stamp[r] = epoch;
      list[w++] = r;
    }
    list.resize(w);
  };

  constexpr std::size_t kCandidateColumns = 8;
  std::size_t rank = 0;
  Row<Value> scratch;
  std::vector<std::uint32_t> candidates;
  for (;;) {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t c = 0; c < ncols; ++c) {
      if (colcount[c] != 0 && colcount[c] < best) {
        best = colcount[c];
        if (best == 1) break;
      }
    }
    if (best == std::numeric_limits<std::uint32_t>::max()) break;

    candidates.clear();
    for (std::uint32_t c = 0; c < ncols && candidates.size() < kCandidateColumns; ++c) {
      if (colcount[c] == best) candidates.push_back(c);
    }
    std::uint32_t prow = 0, pcol = 0;
    bool have = false;
    bool have_unit = false;
    std::size_t have_len = 0, have_weight = 0;
    for (std::uint32_t c : candidates) {
      compact(c);
      for (std::uint32_t r : colrows[c]) {
        const Value& v = *find_in_row(rows[r], c);
        const bool unit = ops.is_unit(v);
        const std::size_t len = rows[r].size();
        const std::size_t w = ops.weight(v);
        const bool better = !have || (unit && !have_unit) ||
                            (unit == have_unit && (len < have_len || (len == have_len && w < have_weight)));
        if (better) {
          have = true;
          have_unit = unit;
          have_len = len;
          have_weight = w;
          prow = r;
          pcol = c;
        }
      }
      if (have_unit && have_len == 1) break;
    }

    active[prow] = 0;
    ++rank;
    for (const auto& e : rows[prow]) --colcount[e.first];
    const Row<Value>& pivot_row = rows[prow];
    const Value pivot = *find_in_row(pivot_row, pcol);

    for (std::uint32_t r : colrows[pcol]) {
      if (r == prow) continue;
      Row<Value>& target = rows[r];
      const Value a = *find_in_row(target, pcol);
      const auto coeffs = ops.prepare(pivot, a);
      scratch.clear();
      scratch.reserve(target.size() + pivot_row.size());
      std::size_t i = 0, j = 0;
      while (i < target.size() || j < pivot_row.size()) {
        if (j == pivot_row.size() || (i < target.size() && target[i].first < pivot_row[j].first)) {
          scratch.emplace_back(target[i].first, ops.target_only(coeffs, target[i].second));
          ++i;
        } else if (i == target.size() || pivot_row[j].first < target[i].first) {
          const std::uint32_t c = pivot_row[j].first;
          Value v = ops.pivot_only(coeffs, pivot_row[j].second);
          if (!Ops::is_zero(v)) {
            scratch.emplace_back(c, std::move(v));
            ++colcount[c];
            colrows[c].push_back(r);
          }
          ++j;
        } else {
          const std::uint32_t c = target[i].first;
          Value v = ops.both(coeffs, target[i].second, pivot_row[j].second);
          if (Ops::is_zero(v)) {
            --colcount[c];
          } else {
            scratch.emplace_back(c, std::move(v));
          }
          ++i;
          ++j;
        }
      }
      ops.finish(coeffs, scratch);
      target.swap(scratch);
    }
    colrows[pcol].clear();
    Row<Value>().swap(rows[prow]);
  }
  return rank;
}

}  // namespace

std::size_t rank_bareiss(std::vector<std::vector<BigInt>> a) {
  const std::size_t nrows = a.size();
  if (nrows == 0) return 0;
  const std::size_t ncols = a.front().size();
  std::size_t r = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t piv = r;
    while (piv < nrows && a[piv][c] == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < nrows; ++i) {
      for (std::size_t j = c + 1; j < ncols; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::size_t rank_rational(const SparseIntMatrix& m, std::size_t dense_threshold) {
  if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) return 0;
  if (m.rows() <= dense_threshold && m.cols() <= dense_threshold) return rank_bareiss(m.to_dense());
  {
    std::vector<Row<std::int64_t>> rows(m.rows());
    bool fits = true;
    for (std::size_t r = 0; r < m.rows() && fits; ++r) {
      for (const auto& e : m.row(r)) {
        const auto v = to_int64(e.value);
        if (!v) {
          fits = false;
          break;
        }
        rows[r].emplace_back(e.col, *v);
      }
    }
    if (fits) {
      try {
        return sparse_rank(std::move(rows), m.cols(), SmallIntegerOps{});
      } catch (const SmallIntegerOps::Overflow&) {
      }
    }
  }
  std::vector<Row<BigInt>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& e : m.row(r)) rows[r].emplace_back(e.col, e.value);
  }
  return sparse_rank(std::move(rows), m.cols(), IntegerOps{});
}

std::size_t rank_modp(const SparseIntMatrix& m, std::uint64_t p) {
  const PrimeField field(p);
  std::vector<Row<std::uint64_t>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& e : m.row(r)) {
      const std::uint64_t v = field.reduce(e.value);
      if (v != 0) rows[r].emplace_back(e.col, v);
    }
  }
  return sparse_rank(std::move(rows), m.cols(), ModOps(field));
}

IntegralSolver::IntegralSolver(const SparseIntMatrix& g) : n_(g.rows()), g_(g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("IntegralSolver: matrix is not square");
  const PrimeField field(kLargePrime);
  lu_.assign(n_ * n_, 0);
  perm_.resize(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    perm_[r] = static_cast<std::uint32_t>(r);
    for (const auto& e : g.row(r)) lu_[r * n_ + e.col] = field.reduce(e.value);
  }
  modular_ok_ = true;
  for (std::size_t k = 0; k < n_ && modular_ok_; ++k) {
    std::size_t piv = k;
    while (piv < n_ && lu_[piv * n_ + k] == 0) ++piv;
    if (piv == n_) {
      modular_ok_ = false;
      break;
    }
    if (piv != k) {
      std::swap_ranges(lu_.begin() + static_cast<std::ptrdiff_t>(piv * n_), lu_.begin() + static_cast<std::ptrdiff_t>((piv + 1) * n_),
                       lu_.begin() + static_cast<std::ptrdiff_t>(k * n_));
      std::swap(perm_[piv], perm_[k]);
    }
    const std::uint64_t inv = field.inv(lu_[k * n_ + k]);
    for (std::size_t i = k + 1; i < n_; ++i) {
      std::uint64_t& lik = lu_[i * n_ + k];
      if (lik == 0) continue;
      lik = field.mul(lik, inv);
      for (std::size_t j = k + 1; j < n_; ++j) {
        const std::uint64_t ukj = lu_[k * n_ + j];
        if (ukj != 0) lu_[i * n_ + j] = field.sub(lu_[i * n_ + j], field.mul(lik, ukj));
      }
    }
  }
  if (!modular_ok_) {
    lu_.clear();
    if (rank_rational(g) < n_) throw Error(Errc::Singular, "Gram matrix is singular over Q");
  }

  small_ok_ = true;
  small_.resize(n_);
  for (std::size_t r = 0; r < n_ && small_ok_; ++r) {
    for (const auto& e : g.row(r)) {
      auto v = to_int64(e.value);
      if (!v) {
        small_ok_ = false;
        break;
      }
      small_[r].emplace_back(e.col, *v);
    }
  }
  if (!small_ok_) small_.clear();
}

bool IntegralSolver::verify(std::span<const std::int64_t> x, std::span<const BigInt> y) const {
  if (small_ok_) {
    bool overflow = false;
    for (std::size_t r = 0; r < n_ && !overflow; ++r) {
      Int128 acc = 0;
      for (const auto& [c, v] : small_[r]) {
        Int128 prod;
        if (__builtin_mul_overflow(static_cast<Int128>(v), static_cast<Int128>(x[c]), &prod) ||
            __builtin_add_overflow(acc, prod, &acc)) {
          overflow = true;
          break;
        }
      }
      if (overflow) break;
      if (auto yr = to_int64(y[r])) {
        if (acc != *yr) return false;
      } else if (from_int128(acc) != y[r]) {
        return false;
      }
    }
    if (!overflow) return true;
  }
  for (std::size_t r = 0; r < n_; ++r) {
    BigInt acc = 0;
    for (const auto& e : g_.row(r)) acc += e.value * x[e.col];
    if (acc != y[r]) return false;
  }
  return true;
}

std::vector<BigInt> IntegralSolver::solve(std::span<const BigInt> y) const {
  if (y.size() != n_) throw std::invalid_argument("IntegralSolver::solve: dimension mismatch");
  if (modular_ok_) {
    const PrimeField field(kLargePrime);
    std::vector<std::uint64_t> b(n_);
    for (std::size_t i = 0; i < n_; ++i) b[i] = field.reduce(y[perm_[i]]);
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint64_t acc = b[i];
      for (std::size_t j = 0; j < i; ++j) {
        const std::uint64_t l = lu_[i * n_ + j];
        if (l != 0 && b[j] != 0) acc = field.sub(acc, field.mul(l, b[j]));
      }
      b[i] = acc;
    }
    for (std::size_t ii = n_; ii-- > 0;) {
      std::uint64_t acc = b[ii];
      for (std::size_t j = ii + 1; j < n_; ++j) {
        const std::uint64_t u = lu_[ii * n_ + j];
        if (u != 0 && b[j] != 0) acc = field.sub(acc, field.mul(u, b[j]));
      }
      b[ii] = field.mul(acc, field.inv(lu_[ii * n_ + ii]));
    }
    std::vector<std::int64_t> x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = field.lift(b[i]);
    if (verify(x, y)) {
      std::vector<BigInt> out(n_);
      for (std::size_t i = 0; i < n_; ++i) out[i] = static_cast<long>(x[i]);
      return out;
    }
  }
  return solve_exact(y);
}

std::vector<BigInt> IntegralSolver::solve_exact(std::span<const BigInt> y) const {
  std::vector<std::vector<Rational>> a(n_, std::vector<Rational>(n_ + 1));
  for (std::size_t r = 0; r < n_; ++r) {
    for (const auto& e : g_.row(r)) a[r][e.col] = e.value;
    a[r][n_] = y[r];
  }
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t piv = k;
    while (piv < n_ && a[piv][k] == 0) ++piv;
    if (piv == n_) throw Error(Errc::Singular, "Gram matrix is singular over Q");
    std::swap(a[piv], a[k]);
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == k || a[i][k] == 0) continue;
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j <= n_; ++j) a[i][j] -= f * a[k][j];
    }
  }
  std::vector<BigInt> out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const Rational v = a[i][n_] / a[i][i];
    if (v.get_den() != 1) throw Error(Errc::NonIntegral, "solution coordinate " + std::to_string(i) + " is " + v.get_str());
    out[i] = v.get_num();
  }
  return out;
}

std::vector<BigInt> solve_integral(const SparseIntMatrix& g, std::span<const BigInt> y) {
  return IntegralSolver(g).solve(y);
}

}  // namespace gl1hom
