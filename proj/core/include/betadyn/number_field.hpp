#pragma once

// Exact arithmetic in Q(alpha) where alpha is a real algebraic number given by
// a squarefree polynomial and an isolating interval.

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "betadyn/numerics.hpp"
#include "betadyn/polynomial.hpp"

namespace betadyn {

class NumberField {
 public:
  /// `modulus` must be squarefree of degree >= 2 with exactly one root in
  /// (lo, hi) and no root at either endpoint.
  static std::shared_ptr<const NumberField> create(const Polynomial& modulus, const Rational& lo,
                                                   const Rational& hi);

  const Polynomial& modulus() const { return modulus_; }
  int degree() const { return modulus_.degree(); }

  /// Isolating interval of width <= `width` (refined by bisection and cached).
  std::pair<Rational, Rational> interval(const Rational& width) const;
  std::pair<Rational, Rational> current_interval() const;

  /// "root:[c0,...,ck]@[lo,hi]" with the interval given at creation.
  std::string literal() const;

 private:
  NumberField(Polynomial modulus, Rational lo, Rational hi);

  Polynomial modulus_;
  Rational orig_lo_, orig_hi_;
  int sign_lo_;
  mutable std::mutex mutex_;
  mutable Rational lo_, hi_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// An element r(alpha) of a number field, or a plain rational when no field
/// is attached. Rationals mix freely with elements of any field.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const Rational& q);  // NOLINT(google-explicit-constructor)
  FieldElement(long q) : FieldElement(Rational(q)) {}  // NOLINT(google-explicit-constructor)
  FieldElement(FieldPtr field, const Polynomial& rep);
  static FieldElement generator(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const Polynomial& rep() const { return rep_; }
  bool is_rational() const { return rep_.is_constant(); }
  /// Requires is_rational().
  Rational rational_value() const { return rep_.coeff(0); }

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  Integer floor() const;
  /// Enclosure of width <= `width`, carrying a refiner.
  Enclosure enclosure(const Rational& width = pow2(-64)) const;
  double to_double() const;
  /// log2|value|; throws DomainError for zero.
  double log2_abs() const;

  FieldElement inverse() const;

  /// The same real expressed over `target`, when this element is rational
  /// or is known to live in `target` (same modulus and same root).
  std::optional<FieldElement> embed_into(const FieldPtr& target) const;

  std::string to_string() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a);
  friend int compare(const FieldElement& a, const FieldElement& b) { return (a - b).sign(); }
  friend bool operator<(const FieldElement& a, const FieldElement& b) { return compare(a, b) < 0; }
  friend bool operator<=(const FieldElement& a, const FieldElement& b) {
    return compare(a, b) <= 0;
  }
  friend bool operator>(const FieldElement& a, const FieldElement& b) { return compare(a, b) > 0; }
  friend bool operator>=(const FieldElement& a, const FieldElement& b) {
    return compare(a, b) >= 0;
  }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return compare(a, b) == 0;
  }

 private:
  std::pair<Rational, Rational> eval_at(long bits) const;
  bool exact_zero() const;
  static FieldPtr common_field(const FieldElement& a, const FieldElement& b);

  FieldPtr field_;
  Polynomial rep_;
};

/// x^e for any integer e (negative powers need x != 0).
FieldElement pow(const FieldElement& x, long e);

}  // namespace betadyn
