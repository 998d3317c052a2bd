#pragma once

// Exact arithmetic in Q(s), s = q^{1/2}.
//
// A nonzero value is stored as s^shift * N(s) / D(s) where N and D are
// polynomials over Q with nonzero constant terms, gcd(N, D) = 1 and D monic.
// Every value therefore has exactly one representation and equality is
// structural. Values with D = 1 are Laurent polynomials in s; arithmetic
// between them never computes a gcd.

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace qball {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense univariate polynomial over Q, coefficients in ascending degree.
/// The zero polynomial is the empty vector; otherwise the last entry is nonzero.
using Poly = std::vector<Rational>;

namespace poly {

void trim(Poly& p);
int degree(const Poly& p);  // -1 for zero
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Rational& c);
Poly shift_up(const Poly& a, int k);  // a * x^k, k >= 0
/// Quotient and remainder; b must be nonzero.
void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b);
Rational eval(const Poly& p, const Rational& x);

}  // namespace poly

class Scalar {
 public:
  Scalar() = default;
  Scalar(long value);  // NOLINT(google-explicit-constructor)
  explicit Scalar(const Rational& value);
  explicit Scalar(const Integer& value);

  /// s^k; s_power(2k) == q^k.
  static Scalar s_power(int k);
  static Scalar q_power(int k) { return s_power(2 * k); }
  static Scalar q() { return s_power(2); }
  static Scalar s() { return s_power(1); }

  /// Builds s^shift * num / den from arbitrary polynomials and canonicalizes.
  static Scalar from_parts(int shift, Poly num, Poly den);

  /// Parses the textual scalar form: integers, q, s, ^, + - * / and parens.
  static Scalar parse(std::string_view text);

  bool is_zero() const { return num_.empty(); }
  bool is_one() const;
  /// True when the denominator is 1, i.e. the value is a Laurent polynomial in s.
  bool is_laurent() const { return den_.size() == 1; }
  /// A single term c * s^k.
  bool is_monomial() const { return is_laurent() && nonzero_terms() == 1; }
  /// Sign of the leading (lowest power) coefficient of the numerator.
  int leading_sign() const;

  int shift() const { return shift_; }
  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  /// True when only even powers of s occur, so the value lies in Q(q).
  bool is_even() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Throws DivisionByZero for zero.
  Scalar inverse() const;
  /// Integer power; negative exponents require a nonzero value.
  Scalar pow(int k) const;

  friend bool operator==(const Scalar&, const Scalar&) = default;

  /// Exact value at q = q_value (s^2 = q_value).
  /// Throws IrrationalAtRationalQ when odd s-powers remain and PoleError
  /// when the denominator vanishes.
  Rational evaluate_at(const Rational& q_value) const;

  /// Canonical text, e.g. "q^-2 - 1" or "(s)/(-1 + q^2)".
  std::string to_string() const;

 private:
  int nonzero_terms() const;
  void canonicalize();

  int shift_ = 0;
  Poly num_;
  Poly den_{Rational(1)};
};

std::string to_string(const Rational& r);
/// Parses "p/r" or "p".
Rational parse_rational(std::string_view text);

}  // namespace qball
