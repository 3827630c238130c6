#include "gl1hom/homology.hpp"

#include "gl1hom/arith.hpp"
#include "gl1hom/error.hpp"
#include "gl1hom/linalg.hpp"

namespace gl1hom {

PoincarePolynomial poincare(const GradedComplex& c, std::uint64_t characteristic, std::stop_token stop) {
  if (characteristic != 0 && !is_prime(characteristic)) {
    throw Error(Errc::NotPrime, std::to_string(characteristic) + " is not prime");
  }
  std::map<Bidegree, std::size_t> ranks;
  for (const auto& [b, m] : c.differential) {
    if (stop.stop_requested()) throw Error(Errc::Timeout, "computation cancelled");
    ranks[b] = characteristic == 0 ? rank_rational(m) : rank_modp(m, characteristic);
  }
  auto rank_at = [&](Bidegree b) {
    auto it = ranks.find(b);
    return it == ranks.end() ? std::size_t{0} : it->second;
  };
  PoincarePolynomial p;
  for (const auto& [b, dim] : c.dims) {
    const std::size_t out = rank_at(b);
    const std::size_t in = rank_at({b.i - 1, b.q});
    if (out + in > dim) throw Error(Errc::DSquareNonzero, "ranks exceed the chain dimension");
    const std::size_t betti = dim - out - in;
    if (betti) p.terms[b] = betti;
  }
  return p;
}

std::uint64_t total_rank(const PoincarePolynomial& p) noexcept {
  std::uint64_t n = 0;
  for (const auto& [b, d] : p.terms) n += d;
  return n;
}

bool euler_characteristic_matches(const GradedComplex& c, const PoincarePolynomial& p) {
  std::map<int, long long> chain, homology;
  for (const auto& [b, d] : c.dims) chain[b.q] += (b.i % 2 == 0 ? 1 : -1) * static_cast<long long>(d);
  for (const auto& [b, d] : p.terms) homology[b.q] += (b.i % 2 == 0 ? 1 : -1) * static_cast<long long>(d);
  std::erase_if(chain, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(homology, [](const auto& kv) { return kv.second == 0; });
  return chain == homology;
}

}  // namespace gl1hom
