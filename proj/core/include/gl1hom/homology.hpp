#ifndef GL1HOM_HOMOLOGY_HPP
#define GL1HOM_HOMOLOGY_HPP

#include <cstdint>
#include <map>
#include <stop_token>

#include "gl1hom/complex.hpp"

namespace gl1hom {

/// (homological degree, quantum degree) -> dimension; zero terms are absent.
struct PoincarePolynomial {
  std::map<Bidegree, std::uint64_t> terms;

  bool operator==(const PoincarePolynomial&) const = default;
};

/// Betti numbers over Q (characteristic 0) or F_p. Throws Error{NotPrime}.
PoincarePolynomial poincare(const GradedComplex& c, std::uint64_t characteristic = 0, std::stop_token stop = {});

std::uint64_t total_rank(const PoincarePolynomial& p) noexcept;

/// Per quantum degree, the alternating sums of chain and homology dimensions
/// agree.
bool euler_characteristic_matches(const GradedComplex& c, const PoincarePolynomial& p);

}  // namespace gl1hom

#endif  // GL1HOM_HOMOLOGY_HPP
