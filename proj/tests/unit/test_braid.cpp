#include "doctest.h"

#include "gl1hom/braid.hpp"
#include "gl1hom/error.hpp"

using namespace gl1hom;

namespace {

Errc parse_error(const char* s, int cap = kDefaultStrandCap) {
  try {
    parse_braid(s, cap);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parsed: " << s);
  return Errc::Timeout;
}

}  // namespace

TEST_CASE("letter and integer syntax") {
  const BraidWord w = parse_braid("AbAb");
  CHECK(w.letters == std::vector<int>{1, -2, 1, -2});
  CHECK(w.index == 3);
  CHECK(w.n_plus == 2);
  CHECK(w.n_minus == 2);
  CHECK(parse_braid("1 -2 1 -2") == w);
  CHECK(parse_braid("  1\t-2   1 -2 ") == w);
  CHECK(parse_braid("+1 -2 +1 -2") == w);
}

TEST_CASE("malformed words") {
  CHECK(parse_error("A0B") == Errc::ZeroGenerator);
  CHECK(parse_error("1 0 2") == Errc::ZeroGenerator);
  CHECK(parse_error("") == Errc::EmptyWord);
  CHECK(parse_error("   ") == Errc::EmptyWord);
  CHECK(parse_error("A1") == Errc::InvalidCharacter);
  CHECK(parse_error("1 A") == Errc::InvalidCharacter);
  CHECK(parse_error("AZ") == Errc::InvalidCharacter);
  CHECK(parse_error("+-3") == Errc::InvalidCharacter);
  CHECK(parse_error("ABCDEFGH") == Errc::IndexTooLarge);
  CHECK(parse_braid("ABCDEFGH", 9).index == 9);
}

TEST_CASE("round trips in both syntaxes") {
  for (const char* s : {"A", "a", "AbAb", "AABacBc", "aBaBcBBdCbdc", "GfEdCbA"}) {
    const BraidWord w = parse_braid(s, 9);
    CHECK(render_letters(w) == s);
    CHECK(parse_braid(render_letters(w), 9) == w);
    CHECK(parse_braid(render_ints(w), 9) == w);
  }
}

TEST_CASE("mirror flips every crossing") {
  const BraidWord w = parse_braid("AAbAbb");
  const BraidWord m = mirror(w);
  CHECK(render_letters(m) == "aaBaBB");
  CHECK(m.n_plus == w.n_minus);
  CHECK(m.n_minus == w.n_plus);
  CHECK(mirror(m) == w);
}

TEST_CASE("explicit index") {
  const BraidWord w = BraidWord::from_letters({1}, 4);
  CHECK(w.index == 4);
  CHECK(BraidWord::from_letters({}).index == 1);
  CHECK_THROWS(BraidWord::from_letters({3}, 2));
}
