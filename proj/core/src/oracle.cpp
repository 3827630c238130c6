#include "gl1hom/oracle.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "gl1hom/error.hpp"
#include "gl1hom/transfer.hpp"

namespace gl1hom {

Polynomial Polynomial::monomial(int nvars, Exponents e, Rational c) {
  Polynomial p(nvars);
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::difference(int nvars, int a, int b) {
  Polynomial p(nvars);
  Exponents e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(a)] = 1;
  p.add_term(e, 1);
  e[static_cast<std::size_t>(a)] = 0;
  e[static_cast<std::size_t>(b)] = 1;
  p.add_term(e, -1);
  return p;
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Exponents(static_cast<std::size_t>(nvars_), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Polynomial::is_homogeneous(int d) const {
  for (const auto& [e, c] : terms_) {
    int deg = 0;
    for (int v : e) deg += v;
    if (deg != d) return false;
  }
  return true;
}

bool Polynomial::is_symmetric() const {
  for (int i = 0; i + 1 < nvars_; ++i) {
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      std::swap(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(i) + 1]);
      auto it = terms_.find(f);
      if (it == terms_.end() || it->second != c) return false;
    }
  }
  return true;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r(nvars_);
  Exponents f(static_cast<std::size_t>(nvars_));
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = e1[i] + e2[i];
      r.add_term(f, c1 * c2);
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

bool Polynomial::divide_by_difference(int a, int b) {
  // Treat the polynomial as one in x_a; synthetic division by (x_a - x_b)
  // working downward from the top power.
  const auto ua = static_cast<std::size_t>(a);
  const auto ub = static_cast<std::size_t>(b);
  int top = -1;
  for (const auto& [e, c] : terms_) top = std::max(top, e[ua]);
  if (top < 0) return true;
  std::vector<Polynomial> coeff(static_cast<std::size_t>(top) + 1, Polynomial(nvars_));
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    f[ua] = 0;
    coeff[static_cast<std::size_t>(e[ua])].add_term(f, c);
  }
  // q_{i-1} = c_i + x_b q_i, remainder c_0 + x_b q_0
  Polynomial xb = monomial(nvars_, [&] {
    Exponents e(static_cast<std::size_t>(nvars_), 0);
    e[ub] = 1;
    return e;
  }());
  std::vector<Polynomial> q(static_cast<std::size_t>(top), Polynomial(nvars_));
  Polynomial carry(nvars_);
  for (int i = top; i >= 1; --i) {
    carry = coeff[static_cast<std::size_t>(i)] + xb * carry;
    q[static_cast<std::size_t>(i - 1)] = carry;
  }
  const Polynomial remainder = coeff[0] + xb * carry;
  if (top == 0) {
    if (!coeff[0].is_zero()) return false;
  } else if (!remainder.is_zero()) {
    return false;
  }
  Polynomial out(nvars_);
  for (int i = 0; i < top; ++i) {
    for (const auto& [e, c] : q[static_cast<std::size_t>(i)].terms_) {
      Exponents f = e;
      f[ua] += i;
      out.add_term(f, c);
    }
  }
  *this = std::move(out);
  return true;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*x" << (i + 1);
      if (e[i] > 1) os << '^' << e[i];
    }
  }
  return os.str();
}

Polynomial evaluate_inf_oracle(const Decoration& dec) {
  const Resolution& res = dec.graph();
  const int k = res.index();
  const int t = res.dumbbell_count();
  if (k > kOracleMaxStrands || res.slice_count() > kOracleMaxSlices) {
    throw Error(Errc::OracleScale, "oracle supports at most 4 strands and 10 slices");
  }
  const auto& cs = ColoringSpace::get(k);
  const int pairs = k * (k - 1) / 2;
  auto pair_index = [k](int a, int b) {  // a < b
    int idx = 0;
    for (int i = 0; i < a; ++i) idx += k - 1 - i;
    return idx + (b - a - 1);
  };

  std::vector<std::vector<std::pair<int, int>>> by_gap(static_cast<std::size_t>(res.gap_count()));
  for (const auto& [pos, e] : dec.dots()) by_gap[static_cast<std::size_t>(pos.gap)].emplace_back(pos.strand - 1, e);

  // Numerators grouped by the multiset of denominator factors.
  std::map<std::vector<int>, Polynomial> grouped;
  const int slices = res.slice_count();
  std::vector<int> mult(static_cast<std::size_t>(pairs), 0);
  Polynomial::Exponents expo(static_cast<std::size_t>(k), 0);

  std::function<void(std::size_t, std::size_t, int, int)> walk = [&](std::size_t start, std::size_t state, int s, int sign) {
    const int steps = std::max(slices, 1);
    if (s == steps) {
      if (state != start) return;
      auto [it, inserted] = grouped.try_emplace(mult, Polynomial(k));
      it->second.add_term(expo, sign);
      return;
    }
    for (const auto& [strand, e] : by_gap[static_cast<std::size_t>(s)]) expo[static_cast<std::size_t>(cs.pigment(state, strand))] += e;
    if (s < slices && res.slices()[static_cast<std::size_t>(s)].dumbbell) {
      const int p = res.slices()[static_cast<std::size_t>(s)].position;
      for (std::size_t exit : {state, static_cast<std::size_t>(cs.swapped(state, p))}) {
        const int l = cs.pigment(exit, p - 1);
        const int r = cs.pigment(exit, p);
        const int idx = l < r ? pair_index(l, r) : pair_index(r, l);
        ++mult[static_cast<std::size_t>(idx)];
        walk(start, exit, s + 1, l < r ? sign : -sign);
        --mult[static_cast<std::size_t>(idx)];
      }
    } else {
      walk(start, state, s + 1, sign);
    }
    for (const auto& [strand, e] : by_gap[static_cast<std::size_t>(s)]) expo[static_cast<std::size_t>(cs.pigment(state, strand))] -= e;
  };
  for (std::size_t c = 0; c < cs.size(); ++c) walk(c, c, 0, 1);

  // N = sum_m S_m * prod (x_a - x_b)^(t - m_ab); result = N / prod (x_a - x_b)^t.
  std::vector<Polynomial> diffs;
  std::vector<std::pair<int, int>> pair_of;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      diffs.push_back(Polynomial::difference(k, a, b));
      pair_of.emplace_back(a, b);
    }
  Polynomial numerator(k);
  for (const auto& [m, s] : grouped) {
    if (s.is_zero()) continue;
    Polynomial term = s;
    for (int i = 0; i < pairs; ++i)
      for (int r = m[static_cast<std::size_t>(i)]; r < t; ++r) term = term * diffs[static_cast<std::size_t>(i)];
    numerator = numerator + term;
  }
  for (int i = 0; i < pairs; ++i) {
    for (int r = 0; r < t; ++r) {
      if (!numerator.divide_by_difference(pair_of[static_cast<std::size_t>(i)].first, pair_of[static_cast<std::size_t>(i)].second)) {
        throw Error(Errc::NotPolynomial, "coloring sum does not clear its denominators");
      }
    }
  }
  if (!numerator.is_symmetric()) throw Error(Errc::NotSymmetric, "coloring sum is not symmetric");
  if (!numerator.is_homogeneous(dec.degree() - t)) {
    throw Error(Errc::WrongDegree, "coloring sum is not homogeneous of degree " + std::to_string(dec.degree() - t));
  }
  return numerator;
}

}  // namespace gl1hom
