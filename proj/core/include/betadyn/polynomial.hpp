#pragma once

#include <string>
#include <utility>
#include <vector>

#include "betadyn/numerics.hpp"

namespace betadyn {

/// Univariate polynomial with rational coefficients, stored low degree first
/// and kept trimmed (no trailing zero coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, std::size_t degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const;

  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const { return sgn(eval(x)); }

  /// Outward-rounded enclosure of {p(x) : x in [lo, hi]} using fixed-point
  /// arithmetic with `bits` fractional bits.
  std::pair<Rational, Rational> eval_interval(const Rational& lo, const Rational& hi,
                                              long bits) const;

  Polynomial derivative() const;
  Polynomial monic() const;
  /// Scaled to integer coefficients with content 1 and positive leading term.
  Polynomial primitive() const;
  Polynomial squarefree() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Quotient and remainder; throws DomainError when dividing by zero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  Polynomial operator%(const Polynomial& m) const { return divmod(*this, m).second; }
  /// Monic gcd; gcd(0, 0) = 0.
  static Polynomial gcd(const Polynomial& a, const Polynomial& b);
  /// s with s * a = 1 modulo m; requires gcd(a, m) = 1.
  static Polynomial inverse_mod(const Polynomial& a, const Polynomial& m);

  /// Number of distinct real roots in the half-open interval (a, b].
  int count_roots(const Rational& a, const Rational& b) const;

  /// "[c0,c1,...,ck]"
  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

}  // namespace betadyn
