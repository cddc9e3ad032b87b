#pragma once

// Exact rational arithmetic and rational enclosures of real numbers.
//
// Every real quantity in the library is either an exact element of a number
// field (see number_field.hpp) or an Enclosure: a closed rational interval
// [lo, hi] known to contain the value, optionally paired with a refiner that
// can produce tighter enclosures on demand.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>

namespace betadyn {

using Integer = mpz_class;
using Rational = mpq_class;

/// Limits on how hard a floor decision may work before giving up.
///
/// A decision refines through widths 2^-4, 2^-8, ... and stops after
/// `max_rounds` rounds or once the width reaches 2^-min_width_bits.
struct PrecisionBudget {
  int max_rounds = 64;
  int min_width_bits = 256;
};

/// Process-wide default budget. Initialised from BETADYN_PRECISION_BITS when
/// that variable holds a positive integer.
PrecisionBudget default_budget();
void set_default_budget(const PrecisionBudget& budget);

// Rational helpers.
Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
Rational pow2(long exponent);
Rational abs_of(const Rational& q);
/// log2|q| for q != 0, accurate to double precision for any magnitude.
double log2_abs(const Rational& q);
double log2_abs(const Integer& z);
double to_double(const Rational& q);
/// Exact value of a finite double.
Rational rational_from_double(double d);
std::string to_string(const Rational& q);

class Enclosure {
 public:
  /// Produces an enclosure of the same real with width <= the argument.
  using Refiner = std::function<Enclosure(const Rational& width)>;

  Enclosure() = default;
  explicit Enclosure(Rational point);
  Enclosure(Rational lo, Rational hi, Refiner refiner = nullptr);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  bool is_point() const { return lo_ == hi_; }
  bool has_refiner() const { return static_cast<bool>(refiner_); }
  const Refiner& refiner() const { return refiner_; }
  bool contains(const Rational& q) const { return lo_ <= q && q <= hi_; }
  /// Largest |value| compatible with the enclosure.
  Rational magnitude() const;
  double midpoint() const;

  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a);
  friend Enclosure abs(const Enclosure& a);

 private:
  Rational lo_{0};
  Rational hi_{0};
  Refiner refiner_;
};

/// Returns an enclosure of width <= `width` containing the same real, and
/// never wider than `e`.
/// Throws PrecisionExhausted when `e` is too wide and has no refiner.
Enclosure refine(const Enclosure& e, const Rational& width);

/// Certified floor: returns d with d <= lo <= hi < d + 1 after refining as
/// the budget allows. Throws PrecisionExhausted otherwise.
Integer floor_separated(const Enclosure& e, const PrecisionBudget& budget = default_budget());

}  // namespace betadyn
