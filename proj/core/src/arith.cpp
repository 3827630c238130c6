#include "gl1hom/arith.hpp"

#include <limits>

#include "gl1hom/error.hpp"

namespace gl1hom {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<UInt128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) noexcept {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are deterministic for all n < 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<std::int64_t> to_int64(const BigInt& v) {
  if (!v.fits_slong_p()) return std::nullopt;
  return static_cast<std::int64_t>(v.get_si());
}

BigInt from_int128(Int128 v) {
  if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max()) {
    return BigInt(static_cast<long>(v));
  }
  const bool negative = v < 0;
  UInt128 u = negative ? -static_cast<UInt128>(v) : static_cast<UInt128>(v);
  BigInt hi(static_cast<unsigned long>(u >> 64));
  BigInt lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
  BigInt r = (hi << 64) + lo;
  return negative ? BigInt(-r) : r;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
}

std::uint64_t PrimeField::reduce(std::int64_t v) const noexcept {
  if (v >= 0) return static_cast<std::uint64_t>(v) % p_;
  const std::uint64_t magnitude = (static_cast<std::uint64_t>(-(v + 1)) + 1) % p_;
  return magnitude == 0 ? 0 : p_ - magnitude;
}

std::uint64_t PrimeField::reduce(const BigInt& v) const {
  if (auto small = to_int64(v)) return reduce(*small);
  BigInt m(static_cast<unsigned long>(p_));
  BigInt r = v % m;
  if (r < 0) r += m;
  return r.get_ui();
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const noexcept { return powmod(a, e, p_); }

std::uint64_t PrimeField::inv(std::uint64_t a) const noexcept { return powmod(a, p_ - 2, p_); }

std::int64_t PrimeField::lift(std::uint64_t a) const noexcept {
  return a > p_ / 2 ? -static_cast<std::int64_t>(p_ - a) : static_cast<std::int64_t>(a);
}

PrimeFieldElement::PrimeFieldElement(std::int64_t value, std::uint64_t modulus)
    : field_(modulus), residue_(field_.reduce(value)) {}

void PrimeFieldElement::check_same_field(const PrimeFieldElement& o) const {
  if (modulus() != o.modulus()) throw Error(Errc::NotPrime, "mixed moduli in prime-field arithmetic");
}

PrimeFieldElement PrimeFieldElement::operator+(const PrimeFieldElement& o) const {
  check_same_field(o);
  return {field_.add(residue_, o.residue_), field_};
}

PrimeFieldElement PrimeFieldElement::operator-(const PrimeFieldElement& o) const {
  check_same_field(o);
  return {field_.sub(residue_, o.residue_), field_};
}

PrimeFieldElement PrimeFieldElement::operator*(const PrimeFieldElement& o) const {
  check_same_field(o);
  return {field_.mul(residue_, o.residue_), field_};
}

PrimeFieldElement PrimeFieldElement::inverse() const {
  if (residue_ == 0) throw Error(Errc::Singular, "inverse of zero in F_" + std::to_string(modulus()));
  return {field_.inv(residue_), field_};
}

}  // namespace gl1hom
