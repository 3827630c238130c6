#include "gl1hom/cli/poly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <vector>

#include "gl1hom/error.hpp"

namespace gl1hom::cli {

namespace {

void append_factor(std::string& out, char var, int e) {
  if (e == 0) return;
  out += var;
  if (e != 1) out += '^' + std::to_string(e);
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  PoincarePolynomial run() {
    PoincarePolynomial p;
    if (s_ == "0") return p;
    for (;;) {
      const auto [b, c] = term();
      auto& slot = p.terms[b];
      if (slot > std::numeric_limits<std::uint64_t>::max() - c) fail("coefficient overflow");
      slot += c;
      if (pos_ == s_.size()) break;
      if (s_.substr(pos_, 3) != " + ") fail("expected ' + '");
      pos_ += 3;
    }
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::PolyParseError, msg + " at offset " + std::to_string(pos_));
  }

  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

  template <typename T>
  T number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    if (s_[start] == '0' && pos_ - start > 1) {
      pos_ = start;
      fail("leading zero");
    }
    T v{};
    const auto r = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (r.ec != std::errc{}) {
      pos_ = start;
      fail("number out of range");
    }
    return v;
  }

  int exponent() {
    if (!peek('^')) return 1;
    ++pos_;
    bool neg = false;
    if (peek('-')) {
      neg = true;
      ++pos_;
    }
    const std::size_t at = pos_;
    const int v = number<int>();
    if (v == 0) {
      pos_ = at;
      fail("zero exponent");
    }
    return neg ? -v : v;
  }

  std::pair<Bidegree, std::uint64_t> term() {
    const std::size_t start = pos_;
    std::uint64_t coef = 1;
    bool has_coef = false;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      coef = number<std::uint64_t>();
      has_coef = true;
      if (coef == 0) {
        pos_ = start;
        fail("zero coefficient");
      }
    }
    Bidegree b;
    bool seen_t = false, seen_q = false;
    while (peek('t') || peek('q')) {
      const char var = s_[pos_];
      bool& seen = var == 't' ? seen_t : seen_q;
      if (seen) fail(std::string("repeated ") + var);
      seen = true;
      ++pos_;
      (var == 't' ? b.i : b.q) = exponent();
    }
    if (!has_coef && !seen_t && !seen_q) fail("empty term");
    if (has_coef && coef == 1 && (seen_t || seen_q)) {
      pos_ = start;
      fail("explicit coefficient 1");
    }
    return {b, coef};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_poly(const PoincarePolynomial& p) {
  std::vector<std::pair<Bidegree, std::uint64_t>> terms(p.terms.begin(), p.terms.end());
  std::erase_if(terms, [](const auto& t) { return t.second == 0; });
  if (terms.empty()) return "0";
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.first.q != b.first.q) return a.first.q > b.first.q;
    return a.first.i > b.first.i;
  });
  std::string out;
  for (const auto& [b, c] : terms) {
    if (!out.empty()) out += " + ";
    std::string mono;
    if (b.i > 0 && b.q < 0) {
      append_factor(mono, 't', b.i);
      append_factor(mono, 'q', b.q);
    } else {
      append_factor(mono, 'q', b.q);
      append_factor(mono, 't', b.i);
    }
    if (c != 1 || mono.empty()) out += std::to_string(c);
    out += mono;
  }
  return out;
}

PoincarePolynomial parse_poly(std::string_view text) { return Parser(text).run(); }

}  // namespace gl1hom::cli
