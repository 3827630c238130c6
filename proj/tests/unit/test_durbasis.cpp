#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"

#include "gl1hom/error.hpp"

using namespace gl1hom;
using testutil::res;

namespace {

std::vector<int> degrees(const ResolutionPtr& r) {
  std::vector<int> d;
  for (const auto& u : dur_basis(r)) d.push_back(u.graph_degree());
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("graded ranks are powers of [2]") {
  CHECK(degrees(res({-1}, {1})) == std::vector<int>{0});
  CHECK(degrees(res({1}, {1})) == std::vector<int>{-1, 1});
  CHECK(degrees(res({1, 1}, {1, 1})) == std::vector<int>{-2, 0, 0, 2});
  CHECK(dur_basis(res({1, 2, 1, 2, 1}, {1, 1, 1, 1, 1})).size() == 32);
}

TEST_CASE("basis order is lexicographic") {
  const auto b = dur_basis(res({1, 1, 1}, {1, 1, 1}));
  std::vector<std::vector<std::uint8_t>> bits;
  for (const auto& u : b) bits.push_back(u.bits);
  CHECK(bits == std::vector<std::vector<std::uint8_t>>{
                    {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}});
  const auto& order = MaskOrder::get(3);
  CHECK(order.of_weight(1).size() == 3);
  CHECK(order.rank_in_weight(bits_to_mask(std::vector<std::uint8_t>{1, 0, 0})) == 2);
  CHECK(mask_to_bits(bits_to_mask(std::vector<std::uint8_t>{1, 0, 1}), 3) == std::vector<std::uint8_t>{1, 0, 1});
}

TEST_CASE("decorations of basis elements") {
  auto r2 = res({1, 1}, {1, 1});
  const auto b2 = dur_basis(r2);
  CHECK(to_decoration(b2.front()).dots().empty());
  CHECK(to_decoration(b2.back()).dots().size() == 2);
  CHECK(to_decoration(b2.back()).degree() == 2);

  auto r1 = res({1}, {1});
  const auto b1 = dur_basis(r1);
  const Decoration g1 = to_decoration(b1[1]);
  REQUIRE(g1.dots().size() == 1);
  CHECK(g1.dots().begin()->first == GapStrand{0, 2});
}

TEST_CASE("merging decorations") {
  auto r = res({1}, {1});
  const auto b = dur_basis(r);
  const Decoration g0 = to_decoration(b[0]), g1 = to_decoration(b[1]);
  const Decoration sq = merge_decorations(g1, g1);
  REQUIRE(sq.dots().size() == 1);
  CHECK(sq.dots().begin()->second == 2);
  CHECK(merge_decorations(g0, g1).dots() == g1.dots());

  Decoration a(r), c(r);
  a.add_dot(0, 1);
  c.add_dot(0, 2, 3);
  const Decoration u = merge_decorations(a, c);
  CHECK(u.dots().size() == 2);
  CHECK(u.degree() == 4);

  try {
    merge_decorations(g0, Decoration(res({1, 1}, {1, 1})));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ResolutionMismatch);
  }
}

TEST_CASE("dots must land on the graph") {
  Decoration d(res({1}, {1}));
  CHECK_THROWS(d.add_dot(1, 1));
  CHECK_THROWS(d.add_dot(0, 3));
  d.add_dot(0, 1, 0);
  CHECK(d.dots().empty());
}
