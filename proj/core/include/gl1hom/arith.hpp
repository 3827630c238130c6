#ifndef GL1HOM_ARITH_HPP
#define GL1HOM_ARITH_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace gl1hom {

__extension__ typedef __int128 Int128;
__extension__ typedef unsigned __int128 UInt128;

/// Arbitrary-precision integer.
using BigInt = mpz_class;

/// Arbitrary-precision rational. GMP keeps every value canonical:
/// lowest terms, positive denominator.
using Rational = mpq_class;

/// Deterministic primality test for 64-bit integers.
bool is_prime(std::uint64_t n) noexcept;

/// Returns the value if it fits a signed 64-bit integer.
std::optional<std::int64_t> to_int64(const BigInt& v);

BigInt from_int128(Int128 v);

/// Arithmetic in F_p for a 64-bit prime p. The hot loops of the prime-field
/// rank routine use this directly on raw residues.
class PrimeField {
 public:
  /// Throws Error{NotPrime} unless p is prime.
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const noexcept { return p_; }

  std::uint64_t reduce(std::int64_t v) const noexcept;
  std::uint64_t reduce(const BigInt& v) const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    std::uint64_t s = a + b;
    return (s >= p_ || s < a) ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + (p_ - b);
  }
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    return static_cast<std::uint64_t>(static_cast<UInt128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
  /// Multiplicative inverse; a must be nonzero.
  std::uint64_t inv(std::uint64_t a) const noexcept;

  /// Symmetric lift into (-p/2, p/2].
  std::int64_t lift(std::uint64_t a) const noexcept;

 private:
  std::uint64_t p_;
};

/// A residue together with its (prime) modulus.
class PrimeFieldElement {
 public:
  PrimeFieldElement(std::int64_t value, std::uint64_t modulus);

  std::uint64_t residue() const noexcept { return residue_; }
  std::uint64_t modulus() const noexcept { return field_.modulus(); }

  PrimeFieldElement operator+(const PrimeFieldElement& o) const;
  PrimeFieldElement operator-(const PrimeFieldElement& o) const;
  PrimeFieldElement operator*(const PrimeFieldElement& o) const;
  /// Throws Error{Singular} when dividing by zero.
  PrimeFieldElement inverse() const;
  bool operator==(const PrimeFieldElement& o) const {
    return residue_ == o.residue_ && modulus() == o.modulus();
  }

 private:
  PrimeFieldElement(std::uint64_t residue, const PrimeField& field) : field_(field), residue_(residue) {}
  void check_same_field(const PrimeFieldElement& o) const;

  PrimeField field_;
  std::uint64_t residue_;
};

/// Largest prime below 2^62; used for the modular fast paths.
inline constexpr std::uint64_t kLargePrime = 4611686018427387847ULL;

}  // namespace gl1hom

#endif  // GL1HOM_ARITH_HPP
