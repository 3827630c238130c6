#include <map>
#include <random>

#include "doctest.h"
#include "helpers.hpp"

#include "gl1hom/error.hpp"
#include "gl1hom/eval.hpp"
#include "gl1hom/oracle.hpp"
#include "gl1hom/transfer.hpp"

using namespace gl1hom;
using testutil::res;

namespace {

Decoration theta_with_dot(int exponent) {
  Decoration d(res({1}, {1}));
  d.add_dot(0, 2, exponent);
  return d;
}

// Resolution where every slice is a dumbbell, so compressed gaps are gaps.
ResolutionPtr stack(const Signature& sig) {
  return res(sig.positions, BitVector(sig.positions.size(), 1), sig.k);
}

// d.u.r. dots with exponents e_j in {0,1,2}, code = sum e_j 3^j.
Decoration dot_vector(const ResolutionPtr& r, std::size_t code) {
  Decoration d(r);
  const auto pos = dur_positions(*r);
  for (const auto& p : pos) {
    if (code % 3) d.add_dot(p.gap, p.strand, static_cast<int>(code % 3));
    code /= 3;
  }
  return d;
}

int code_degree(std::size_t code, int t) {
  int d = 0;
  for (int j = 0; j < t; ++j, code /= 3) d += static_cast<int>(code % 3);
  return d;
}

}  // namespace

TEST_CASE("1-evaluation of small graphs") {
  CHECK(evaluate1(Decoration(res({}, {}, 1))) == 1);
  CHECK(evaluate1(Decoration(res({}, {}, 2))) == 2);
  CHECK(evaluate1(Decoration(res({}, {}, 4))) == 24);
  // sum over the two colorings: x2/(x1-x2) + x1/(x2-x1) = -1
  CHECK(evaluate1(theta_with_dot(1)) == -1);
  CHECK(evaluate1(Decoration(res({1}, {1}))) == 0);
  CHECK(evaluate1(theta_with_dot(2)) == 0);
  // a dot on the other strand of the same dumbbell: x1/(x1-x2) + x2/(x2-x1) = 1
  Decoration left(res({1}, {1}));
  left.add_dot(0, 1);
  CHECK(evaluate1(left) == 1);
}

TEST_CASE("symbolic oracle on small graphs") {
  Decoration circle(res({}, {}, 1));
  circle.add_dot(0, 1, 3);
  CHECK(evaluate_inf_oracle(circle) == Polynomial::monomial(1, {3}));

  // (x1^2 - x2^2)/(x2 - x1) = -(x1 + x2)
  const Polynomial p = evaluate_inf_oracle(theta_with_dot(2));
  CHECK(p == -(Polynomial::monomial(2, {1, 0}) + Polynomial::monomial(2, {0, 1})));
  CHECK(evaluate_inf_oracle(Decoration(res({1}, {1}))).is_zero());
  CHECK(evaluate_inf_oracle(theta_with_dot(1)) == Polynomial::monomial(2, {0, 0}, -1));
}

TEST_CASE("oracle refuses graphs beyond its scale") {
  try {
    evaluate_inf_oracle(Decoration(res({1, 2, 3, 4}, {1, 1, 1, 1})));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OracleScale);
  }
}

TEST_CASE("pairings on the theta graph and three circles") {
  auto theta = res({1}, {1});
  const auto b = dur_basis(theta);
  const Decoration g0 = to_decoration(b[0]), g1 = to_decoration(b[1]);
  CHECK(pairing(g0, g1) == -1);
  CHECK(pairing(g0, g0) == 0);
  CHECK(pairing(g1, g1) == 0);
  auto circles = res({1, -2, 1, -2}, {0, 1, 0, 1});
  const Decoration triv(circles);
  CHECK(pairing(triv, triv) == 6);
}

TEST_CASE("Gram matrices of small resolutions") {
  CHECK(gram(*res({1}, {1})).matrix == SparseIntMatrix::from_dense({{0, -1}, {-1, 0}}));
  for (int k = 1; k <= 5; ++k) {
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    CHECK(gram(*res({}, {}, k)).matrix == SparseIntMatrix::from_dense({{f}}));
  }
}

TEST_CASE("cached Gram equals the pairing-by-pairing Gram") {
  for (const auto& [letters, v] : std::vector<std::pair<std::vector<int>, BitVector>>{
           {{1, 1}, {1, 1}}, {{1, 2, 1}, {1, 1, 1}}, {{1, -2, 1, 2}, {1, 0, 1, 1}}, {{2, 1, 3, 2}, {1, 1, 1, 1}}}) {
    auto r = res(letters, v);
    CHECK(gram(*r).matrix == gram_direct(r));
  }
}

TEST_CASE("transfer tables agree with the oracle") {
  for (const Signature& sig : {Signature{2, {1, 1, 1}}, Signature{3, {1, 2, 1}}, Signature{3, {2, 2, 1, 1}},
                               Signature{4, {1, 3, 2}}}) {
    auto r = stack(sig);
    const int t = sig.dumbbell_count();
    TransferEngine engine(sig);
    const DotTable plain = engine.table();
    for (std::size_t code = 0; code < plain.size(); ++code) {
      if (code_degree(code, t) != t) continue;
      const Decoration d = dot_vector(r, code);
      CHECK(Rational(plain.at(code)) == evaluate_inf_oracle(d).constant_term());
    }
    const ExtraDot extra{1, 1};
    const DotTable with = engine.table(extra);
    for (std::size_t code = 0; code < with.size(); ++code) {
      if (code_degree(code, t) != t - 1) continue;
      Decoration d = dot_vector(r, code);
      d.add_dot(extra.cgap, extra.strand);
      CHECK(Rational(with.at(code)) == evaluate_inf_oracle(d).constant_term());
    }
  }
}

TEST_CASE("values do not depend on the generic point") {
  std::mt19937_64 rng(3);
  GenericPoint odd{{Rational(-7), Rational(2, 3), Rational(11), Rational(5, 2)}};
  REQUIRE(odd.is_generic());
  CHECK_FALSE(GenericPoint{{Rational(1), Rational(1)}}.is_generic());
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 3);
    std::vector<int> letters;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) letters.push_back((1 + static_cast<int>(rng() % (k - 1))) * (rng() % 2 ? 1 : -1));
    BitVector v(letters.size());
    for (auto& b : v) b = rng() % 2;
    auto r = res(letters, v, k);
    Decoration d(r);
    for (int i = 0; i < r->dumbbell_count(); ++i)
      d.add_dot(static_cast<int>(rng() % r->gap_count()), 1 + static_cast<int>(rng() % k));
    GenericPoint p = odd;
    p.x.resize(k);
    const BigInt a = evaluate1(d);
    CHECK(evaluate1_at(d, GenericPoint::standard(k)) == a);
    CHECK(evaluate1_at(d, GenericPoint::primes(k)) == a);
    CHECK(evaluate1_at(d, p) == a);
  }
}

TEST_CASE("Gram cache persistence hooks") {
  auto& cache = GramCache::shared();
  std::map<Signature, SparseIntMatrix> store;
  cache.clear();
  cache.set_persistence([&](const Signature& s) -> std::optional<SparseIntMatrix> {
    auto it = store.find(s);
    return it == store.end() ? std::nullopt : std::optional(it->second);
  },
                        [&](const Signature& s, const SparseIntMatrix& g) { store.emplace(s, g); });
  const Signature sig{3, {1, 2, 2}};
  const SparseIntMatrix cold = cache.get(sig)->gram_matrix();
  CHECK(store.size() == 1);
  cache.clear();
  const SparseIntMatrix warm = cache.get(sig)->gram_matrix();
  CHECK(warm == cold);
  CHECK(cache.misses() == 1);
  CHECK(cache.get(sig)->gram_matrix() == cold);
  CHECK(cache.hits() == 1);
  cache.set_persistence({}, {});
  cache.clear();

  CHECK(table_from_gram(sig, cold).at(mask_code(0b111)) == cold.at(0, 7));
  CHECK_THROWS_AS(table_from_gram(sig, SparseIntMatrix::identity(4)), Error);
}
