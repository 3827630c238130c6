#include "gl1hom/eval.hpp"

#include <cmath>

#include "gl1hom/error.hpp"
#include "gl1hom/transfer.hpp"

namespace gl1hom {

namespace {

// Dots grouped by gap: (0-based strand, exponent).
std::vector<std::vector<std::pair<int, int>>> dots_by_gap(const Decoration& dec) {
  std::vector<std::vector<std::pair<int, int>>> by_gap(static_cast<std::size_t>(dec.graph().gap_count()));
  for (const auto& [pos, e] : dec.dots()) by_gap[static_cast<std::size_t>(pos.gap)].emplace_back(pos.strand - 1, e);
  return by_gap;
}

template <class S>
S scaled_trace(const Decoration& dec, std::int64_t L) {
  const Resolution& res = dec.graph();
  const auto& cs = ColoringSpace::get(res.index());
  const std::size_t n = cs.size();
  const auto by_gap = dots_by_gap(dec);
  const int slices = res.slice_count();
  S total(0);
  std::vector<S> cur(n), next(n);
  for (std::size_t start = 0; start < n; ++start) {
    std::fill(cur.begin(), cur.end(), S(0));
    cur[start] = S(1);
    for (int s = 0; s < std::max(slices, 1); ++s) {
      for (const auto& [strand, e] : by_gap[static_cast<std::size_t>(s)]) {
        for (std::size_t c = 0; c < n; ++c) {
          if (cur[c] == 0) continue;
          const std::int64_t x = cs.pigment(c, strand) + 1;
          for (int r = 0; r < e; ++r) cur[c] *= x;
        }
      }
      if (s >= slices || !res.slices()[static_cast<std::size_t>(s)].dumbbell) continue;
      const int p = res.slices()[static_cast<std::size_t>(s)].position;
      for (std::size_t c = 0; c < n; ++c) {
        const std::int64_t w = L / ((cs.pigment(c, p - 1) + 1) - (cs.pigment(c, p) + 1));
        next[c] = (cur[c] + cur[cs.swapped(c, p)]) * w;
      }
      cur.swap(next);
    }
    total += cur[start];
  }
  return total;
}

}  // namespace

GenericPoint GenericPoint::standard(int k) {
  GenericPoint p;
  for (int i = 1; i <= k; ++i) p.x.emplace_back(i);
  return p;
}

GenericPoint GenericPoint::primes(int k) {
  GenericPoint p;
  for (std::uint64_t c = 2; static_cast<int>(p.x.size()) < k; ++c) {
    if (is_prime(c)) p.x.emplace_back(static_cast<unsigned long>(c));
  }
  return p;
}

bool GenericPoint::is_generic() const {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[i] == x[j]) return false;
  return true;
}

BigInt evaluate1(const Decoration& dec) {
  const Resolution& res = dec.graph();
  const int t = res.dumbbell_count();
  if (dec.degree() != t) return 0;
  const int k = res.index();
  const BigInt scale_one = scale_denominator(k);
  const std::int64_t l = scale_one.get_si();
  BigInt scale = 1;
  for (int i = 0; i < t; ++i) scale *= scale_one;

  const double bits = std::log2(static_cast<double>(ColoringSpace::get(k).size())) * 2 +
                      t * std::log2(2.0 * static_cast<double>(l)) + dec.degree() * std::log2(static_cast<double>(k)) + 2;
  BigInt trace;
  if (bits < 125) {
    trace = from_int128(scaled_trace<Int128>(dec, l));
  } else {
    trace = scaled_trace<BigInt>(dec, l);
  }
  if (!mpz_divisible_p(trace.get_mpz_t(), scale.get_mpz_t())) {
    throw Error(Errc::NonIntegerEvaluation, "evaluation is not an integer");
  }
  BigInt out;
  mpz_divexact(out.get_mpz_t(), trace.get_mpz_t(), scale.get_mpz_t());
  return out;
}

BigInt evaluate1_at(const Decoration& dec, const GenericPoint& point) {
  const Resolution& res = dec.graph();
  const int t = res.dumbbell_count();
  if (dec.degree() != t) return 0;
  if (static_cast<int>(point.x.size()) != res.index() || !point.is_generic()) {
    throw std::invalid_argument("evaluation point must have k pairwise-distinct values");
  }
  const auto& cs = ColoringSpace::get(res.index());
  const std::size_t n = cs.size();
  const auto by_gap = dots_by_gap(dec);
  const int slices = res.slice_count();
  Rational total = 0;
  std::vector<Rational> cur(n), next(n);
  for (std::size_t start = 0; start < n; ++start) {
    std::fill(cur.begin(), cur.end(), Rational(0));
    cur[start] = 1;
    for (int s = 0; s < std::max(slices, 1); ++s) {
      for (const auto& [strand, e] : by_gap[static_cast<std::size_t>(s)]) {
        for (std::size_t c = 0; c < n; ++c) {
          for (int r = 0; r < e; ++r) cur[c] *= point.x[static_cast<std::size_t>(cs.pigment(c, strand))];
        }
      }
      if (s >= slices || !res.slices()[static_cast<std::size_t>(s)].dumbbell) continue;
      const int p = res.slices()[static_cast<std::size_t>(s)].position;
      for (std::size_t c = 0; c < n; ++c) {
        const Rational diff = point.x[static_cast<std::size_t>(cs.pigment(c, p - 1))] -
                              point.x[static_cast<std::size_t>(cs.pigment(c, p))];
        next[c] = (cur[c] + cur[cs.swapped(c, p)]) / diff;
      }
      cur.swap(next);
    }
    total += cur[start];
  }
  if (total.get_den() != 1) throw Error(Errc::NonIntegerEvaluation, "evaluation is " + total.get_str());
  return total.get_num();
}

BigInt pairing(const Decoration& a, const Decoration& b) { return evaluate1(merge_decorations(a, b)); }

GramMatrix gram(const Resolution& res) {
  const Signature sig = res.signature();
  auto data = GramCache::shared().get(sig);
  return {sig, data->gram_matrix()};
}

SparseIntMatrix gram_direct(const ResolutionPtr& res) {
  const auto basis = dur_basis(res);
  std::vector<Decoration> decs;
  for (const auto& u : basis) decs.push_back(to_decoration(u));
  SparseIntMatrix g(basis.size(), basis.size());
  for (std::size_t i = 0; i < decs.size(); ++i) {
    for (std::size_t j = 0; j < decs.size(); ++j) g.add(i, j, pairing(decs[i], decs[j]));
  }
  return g;
}

}  // namespace gl1hom
