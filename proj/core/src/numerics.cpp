#include "betadyn/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <string>

#include "betadyn/errors.hpp"

namespace betadyn {

namespace {

std::mutex& budget_mutex() {
  static std::mutex m;
  return m;
}

PrecisionBudget& budget_storage() {
  static PrecisionBudget budget = [] {
    PrecisionBudget b;
    if (const char* env = std::getenv("BETADYN_PRECISION_BITS")) {
      char* end = nullptr;
      long bits = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && bits > 0 && bits < (1L << 20)) {
        b.min_width_bits = static_cast<int>(bits);
        b.max_rounds = std::max(b.max_rounds, static_cast<int>((bits + 3) / 4));
      }
    }
    return b;
  }();
  return budget;
}

}  // namespace

PrecisionBudget default_budget() {
  std::lock_guard lock(budget_mutex());
  return budget_storage();
}

void set_default_budget(const PrecisionBudget& budget) {
  std::lock_guard lock(budget_mutex());
  budget_storage() = budget;
}

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational pow2(long exponent) {
  Rational r(1);
  if (exponent >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent));
  }
  return r;
}

Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

double log2_abs(const Integer& z) {
  if (z == 0) throw DomainError("log2 of zero");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

double log2_abs(const Rational& q) {
  if (q == 0) throw DomainError("log2 of zero");
  return log2_abs(Integer(q.get_num())) - log2_abs(Integer(q.get_den()));
}

double to_double(const Rational& q) {
  if (q == 0) return 0.0;
  // mpq_get_d truncates huge/small values poorly; go through exponents.
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(std::clamp(en - ed, -100000L, 100000L)));
}

Rational rational_from_double(double d) {
  if (!std::isfinite(d)) throw DomainError("non-finite number");
  Rational r(d);  // mpq_set_d is exact
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Enclosure::Enclosure(Rational point) : lo_(point), hi_(std::move(point)) {}

Enclosure::Enclosure(Rational lo, Rational hi, Refiner refiner)
    : lo_(std::move(lo)), hi_(std::move(hi)), refiner_(std::move(refiner)) {
  if (hi_ < lo_) throw DomainError("enclosure with hi < lo");
  if (is_point()) refiner_ = nullptr;
}

Rational Enclosure::magnitude() const { return std::max(abs_of(lo_), abs_of(hi_)); }

double Enclosure::midpoint() const { return to_double((lo_ + hi_) / 2); }

Enclosure refine(const Enclosure& e, const Rational& width) {
  if (width <= 0) throw DomainError("refine: width must be positive");
  if (e.width() <= width) return e;
  if (!e.has_refiner()) {
    throw PrecisionExhausted("enclosure of width 2^" + std::to_string(log2_abs(e.width())) +
                             " has no refiner");
  }
  Enclosure r = e.refiner()(width);
  if (r.width() > width) throw PrecisionExhausted("refiner did not reach requested width");
  // Intersecting keeps refinement monotone even if a refiner is sloppy.
  Rational lo = std::max(r.lo(), e.lo());
  Rational hi = std::min(r.hi(), e.hi());
  if (hi < lo) throw PrecisionExhausted("refiner returned a disjoint enclosure");
  return Enclosure(std::move(lo), std::move(hi), r.refiner());
}

Integer floor_separated(const Enclosure& e, const PrecisionBudget& budget) {
  Enclosure cur = e;
  for (int round = 0;; ++round) {
    Integer d = floor_of(cur.lo());
    if (cur.hi() < Rational(d + 1)) return d;
    if (round >= budget.max_rounds || !cur.has_refiner()) break;
    long bits = std::min<long>(4L * (round + 1), budget.min_width_bits);
    Rational target = std::min<Rational>(pow2(-bits), cur.width() / 2);
    if (cur.width() <= pow2(-budget.min_width_bits)) break;
    target = std::max<Rational>(target, pow2(-budget.min_width_bits));
    cur = refine(cur, target);
  }
  throw PrecisionExhausted("cannot separate enclosure [" + std::to_string(to_double(cur.lo())) +
                           ", " + std::to_string(to_double(cur.hi())) + "] from an integer");
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  Enclosure::Refiner refiner;
  if (a.has_refiner() || b.has_refiner()) {
    refiner = [a, b](const Rational& w) { return refine(a, w / 2) + refine(b, w / 2); };
  }
  return Enclosure(a.lo() + b.lo(), a.hi() + b.hi(), std::move(refiner));
}

Enclosure operator-(const Enclosure& a) {
  Enclosure::Refiner refiner;
  if (a.has_refiner()) {
    refiner = [a](const Rational& w) { return -refine(a, w); };
  }
  return Enclosure(-a.hi(), -a.lo(), std::move(refiner));
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) { return a + (-b); }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  Rational p1 = a.lo() * b.lo(), p2 = a.lo() * b.hi(), p3 = a.hi() * b.lo(),
           p4 = a.hi() * b.hi();
  Rational lo = std::min({p1, p2, p3, p4});
  Rational hi = std::max({p1, p2, p3, p4});
  Enclosure::Refiner refiner;
  if (a.has_refiner() || b.has_refiner()) {
    refiner = [a, b](const Rational& w) {
      // width(ab) <= A*wb + B*wa + wa*wb <= w for wa = wb = min(1, w/(A+B+1)).
      Rational scale = a.magnitude() + b.magnitude() + 1;
      Rational part = std::min<Rational>(Rational(1), w / scale);
      return refine(a, part) * refine(b, part);
    };
  }
  return Enclosure(std::move(lo), std::move(hi), std::move(refiner));
}

Enclosure abs(const Enclosure& a) {
  if (a.lo() >= 0) return a;
  if (a.hi() <= 0) return -a;
  Enclosure::Refiner refiner;
  if (a.has_refiner()) {
    refiner = [a](const Rational& w) { return abs(refine(a, w)); };
  }
  return Enclosure(Rational(0), a.magnitude(), std::move(refiner));
}

}  // namespace betadyn
