#include <random>

#include "doctest.h"
#include "helpers.hpp"

#include "gl1hom/error.hpp"
#include "gl1hom/linalg.hpp"
#include "gl1hom/sparse_matrix.hpp"

using namespace gl1hom;

namespace {

std::vector<BigInt> big(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

template <typename F>
Errc code_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no Error thrown");
  return Errc::Timeout;
}

}  // namespace

TEST_CASE("rationals stay reduced") {
  Rational r(6, 4);
  r.canonicalize();
  CHECK(r.get_num() == 3);
  CHECK(r.get_den() == 2);
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
}

TEST_CASE("prime field elements") {
  const PrimeFieldElement a(3, 7), b(5, 7);
  CHECK((a + b).residue() == 1);
  CHECK((a - b).residue() == 5);
  CHECK((a * b).residue() == 1);
  CHECK((a * a.inverse()).residue() == 1);
  CHECK(PrimeFieldElement(-1, 7).residue() == 6);
  CHECK(code_of([] { PrimeFieldElement(1, 8); }) == Errc::NotPrime);
}

TEST_CASE("sparse matrix keeps no zeros or duplicates") {
  auto m = SparseIntMatrix::from_triplets(2, 3, {{0, 1, 2}, {0, 1, -2}, {1, 2, 5}, {1, 2, 1}, {1, 0, 0}});
  CHECK(m.nnz() == 1);
  CHECK(m.at(1, 2) == 6);
  CHECK(m.at(0, 1) == 0);
  m.add(1, 2, -6);
  CHECK(m.is_zero());
  const auto a = SparseIntMatrix::from_dense({{1, 2}, {3, 4}});
  CHECK(a.transpose().at(0, 1) == 3);
  CHECK(a * SparseIntMatrix::identity(2) == a);
  CHECK((a * a).to_dense()[1][1] == 22);
  CHECK((-a).at(1, 0) == -3);
}

TEST_CASE("rank over Q") {
  CHECK(rank_rational(SparseIntMatrix::from_dense({{2}})) == 1);
  CHECK(rank_rational(SparseIntMatrix(3, 4)) == 0);
  CHECK(rank_rational(SparseIntMatrix::from_dense({{1, 2}, {2, 4}})) == 1);
  // sparse path
  CHECK(rank_rational(SparseIntMatrix::from_dense({{1, 2}, {2, 4}}), 0) == 1);
}

TEST_CASE("rank mod p") {
  CHECK(rank_modp(SparseIntMatrix::from_dense({{2}}), 2) == 0);
  CHECK(rank_modp(SparseIntMatrix::from_dense({{1, 2}, {2, 4}}), 3) == 1);
  CHECK(rank_modp(SparseIntMatrix::from_dense({{1, 1}, {1, 2}}), 5) == 2);
  CHECK(code_of([] { rank_modp(SparseIntMatrix::from_dense({{1}}), 9); }) == Errc::NotPrime);
}

TEST_CASE("ranks agree with naive elimination on random small matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 8), cols = 1 + static_cast<int>(rng() % 8);
    const int density = 1 + static_cast<int>(rng() % 4);
    std::vector<std::vector<long>> d(rows, std::vector<long>(cols));
    std::vector<std::vector<Rational>> q(rows, std::vector<Rational>(cols));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (static_cast<int>(rng() % 4) < density) {
          d[r][c] = static_cast<long>(rng() % 7) - 3;
          q[r][c] = d[r][c];
        }
    // rank-deficient rows now and then
    if (rows > 2 && trial % 3 == 0) {
      for (int c = 0; c < cols; ++c) {
        d[rows - 1][c] = 2 * d[0][c] - d[1][c];
        q[rows - 1][c] = d[rows - 1][c];
      }
    }
    const auto m = SparseIntMatrix::from_dense(d);
    const std::size_t want = testutil::naive_rank(q);
    CHECK(rank_rational(m) == want);
    CHECK(rank_rational(m, 0) == want);
    CHECK(rank_bareiss(m.to_dense()) == want);
    for (std::uint64_t p : {2u, 3u, 5u, 101u}) CHECK(rank_modp(m, p) <= want);
  }
}

TEST_CASE("rank survives entries far beyond 64 bits") {
  const BigInt huge = BigInt(1) << 200;
  // det = 2 * huge: full rank over Q, rank 1 mod 2
  auto m = SparseIntMatrix::from_triplets(2, 2, {{0, 0, huge}, {0, 1, huge + 1}, {1, 0, huge}, {1, 1, huge + 3}});
  CHECK(rank_rational(m) == 2);
  CHECK(rank_rational(m, 0) == 2);
  CHECK(rank_modp(m, 2) == 1);
  CHECK(rank_modp(m, 5) == 2);
  auto dep = SparseIntMatrix::from_triplets(2, 2, {{0, 0, huge}, {0, 1, huge + 1}, {1, 0, huge * 3}, {1, 1, huge * 3 + 3}});
  CHECK(rank_rational(dep) == 1);
  CHECK(rank_rational(dep, 0) == 1);
}

TEST_CASE("int64 elimination falls back to big integers on overflow") {
  // coprime entries near 2^40: the cross-multiplied row needs about 2^80
  const long a = (1L << 40) + 15, b = (1L << 40) + 1, c = (1L << 39) + 7, d = (1L << 41) - 3;
  const auto m = SparseIntMatrix::from_dense({{a, b, 0}, {c, d, 1}, {a + c, b + d, 1}});
  CHECK(rank_rational(m, 0) == 2);
  const auto full = SparseIntMatrix::from_dense({{a, b, 0}, {c, d, 1}, {a, d, 1}});
  CHECK(rank_rational(full, 0) == testutil::naive_rank({{Rational(a), Rational(b), Rational(0)},
                                                       {Rational(c), Rational(d), Rational(1)},
                                                       {Rational(a), Rational(d), Rational(1)}}));
}

TEST_CASE("integral solves") {
  const auto theta = SparseIntMatrix::from_dense({{0, -1}, {-1, 0}});
  CHECK(solve_integral(theta, big({-1, 0})) == big({0, 1}));
  CHECK(solve_integral(SparseIntMatrix::identity(3), big({4, -1, 0})) == big({4, -1, 0}));
  CHECK(code_of([] { solve_integral(SparseIntMatrix::from_dense({{2}}), big({1})); }) == Errc::NonIntegral);
  CHECK(code_of([] { IntegralSolver(SparseIntMatrix::from_dense({{1, 2}, {2, 4}})); }) == Errc::Singular);
}

TEST_CASE("solver result re-multiplies to the right-hand side") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    // unimodular: lower unitriangular times upper unitriangular
    std::vector<std::vector<long>> l(n, std::vector<long>(n)), u(n, std::vector<long>(n));
    for (int i = 0; i < n; ++i) {
      l[i][i] = u[i][i] = 1;
      for (int j = 0; j < i; ++j) l[i][j] = static_cast<long>(rng() % 5) - 2;
      for (int j = i + 1; j < n; ++j) u[i][j] = static_cast<long>(rng() % 5) - 2;
    }
    const auto g = SparseIntMatrix::from_dense(l) * SparseIntMatrix::from_dense(u);
    std::vector<BigInt> x(n);
    for (auto& e : x) e = static_cast<long>(rng() % 2001) - 1000;
    const auto y = g * std::span<const BigInt>(x);
    const IntegralSolver s(g);
    CHECK(s.solve(y) == x);
  }
}
