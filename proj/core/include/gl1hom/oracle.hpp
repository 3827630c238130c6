#ifndef GL1HOM_ORACLE_HPP
#define GL1HOM_ORACLE_HPP

#include <map>
#include <string>
#include <vector>

#include "gl1hom/arith.hpp"
#include "gl1hom/durbasis.hpp"

namespace gl1hom {

/// Sparse multivariate polynomial over Q in x_1..x_n.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}
  static Polynomial monomial(int nvars, Exponents e, Rational c = 1);
  /// x_a - x_b (0-based indices).
  static Polynomial difference(int nvars, int a, int b);

  int nvars() const noexcept { return nvars_; }
  const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational constant_term() const;
  /// True if every term has total degree d (vacuous for zero).
  bool is_homogeneous(int d) const;
  bool is_symmetric() const;

  void add_term(const Exponents& e, const Rational& c);
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  /// Exact division by x_a - x_b; false (and *this unchanged) if it leaves a remainder.
  bool divide_by_difference(int a, int b);

  std::string to_string() const;

 private:
  int nvars_;
  std::map<Exponents, Rational> terms_;
};

inline constexpr int kOracleMaxStrands = 4;
inline constexpr int kOracleMaxSlices = 10;

/// Symbolic sum over all colorings of P/Q. Throws Error with OracleScale
/// outside the oracle scale, and NotPolynomial, NotSymmetric or WrongDegree
/// if the result fails the expected structure.
Polynomial evaluate_inf_oracle(const Decoration& dec);

}  // namespace gl1hom

#endif  // GL1HOM_ORACLE_HPP
