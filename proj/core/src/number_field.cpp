#include "betadyn/number_field.hpp"

#include <algorithm>
#include <cmath>

#include "betadyn/errors.hpp"

namespace betadyn {

NumberField::NumberField(Polynomial modulus, Rational lo, Rational hi)
    : modulus_(std::move(modulus)),
      orig_lo_(lo),
      orig_hi_(hi),
      sign_lo_(modulus_.sign_at(lo)),
      lo_(std::move(lo)),
      hi_(std::move(hi)) {}

FieldPtr NumberField::create(const Polynomial& modulus, const Rational& lo, const Rational& hi) {
  if (modulus.degree() < 2) throw DomainError("number field modulus must have degree >= 2");
  if (!(lo < hi)) throw DomainError("isolating interval must have lo < hi");
  if (modulus.sign_at(lo) == 0 || modulus.sign_at(hi) == 0) {
    throw DomainError("isolating interval endpoint is a root");
  }
  Polynomial p = modulus.primitive();
  if (p.squarefree().degree() != p.degree()) throw DomainError("modulus is not squarefree");
  if (p.count_roots(lo, hi) != 1) throw DomainError("interval does not isolate a single root");
  return FieldPtr(new NumberField(std::move(p), lo, hi));
}

std::pair<Rational, Rational> NumberField::interval(const Rational& width) const {
  std::lock_guard lock(mutex_);
  while (hi_ - lo_ > width) {
    Rational mid = (lo_ + hi_) / 2;
    int s = modulus_.sign_at(mid);
    if (s == 0) {
      lo_ = hi_ = mid;
      break;
    }
    if (s == sign_lo_) {
      lo_ = std::move(mid);
    } else {
      hi_ = std::move(mid);
    }
  }
  return {lo_, hi_};
}

std::pair<Rational, Rational> NumberField::current_interval() const {
  std::lock_guard lock(mutex_);
  return {lo_, hi_};
}

std::string NumberField::literal() const {
  return "root:" + modulus_.to_string() + "@[" + orig_lo_.get_str() + "," + orig_hi_.get_str() +
         "]";
}

FieldElement::FieldElement(const Rational& q) : rep_(Polynomial::constant(q)) {}

FieldElement::FieldElement(FieldPtr field, const Polynomial& rep) : field_(std::move(field)) {
  rep_ = field_ ? rep % field_->modulus() : rep;
  if (!field_ && !rep_.is_constant()) throw DomainError("non-constant element without a field");
}

FieldElement FieldElement::generator(FieldPtr field) {
  return FieldElement(std::move(field), Polynomial({Rational(0), Rational(1)}));
}

FieldPtr FieldElement::common_field(const FieldElement& a, const FieldElement& b) {
  const bool ca = a.is_rational(), cb = b.is_rational();
  if (ca && cb) return nullptr;
  if (ca) return b.field_;
  if (cb) return a.field_;
  if (a.field_ != b.field_) {
    if (auto e = b.embed_into(a.field_)) return a.field_;
    throw DomainError("arithmetic between elements of different number fields");
  }
  return a.field_;
}

std::optional<FieldElement> FieldElement::embed_into(const FieldPtr& target) const {
  if (is_rational()) return FieldElement(rational_value());
  if (field_ == target) return *this;
  if (!target || !(field_->modulus() == target->modulus())) return std::nullopt;
  auto [alo, ahi] = field_->current_interval();
  auto [blo, bhi] = target->current_interval();
  Rational lo = std::max(alo, blo), hi = std::min(ahi, bhi);
  if (hi < lo) return std::nullopt;
  const Polynomial& p = target->modulus();
  bool same = lo == hi ? p.sign_at(lo) == 0
                       : (p.sign_at(lo) * p.sign_at(hi) < 0 || p.sign_at(lo) == 0 ||
                          p.sign_at(hi) == 0);
  if (!same) return std::nullopt;
  return FieldElement(target, rep_);
}

std::pair<Rational, Rational> FieldElement::eval_at(long bits) const {
  auto [lo, hi] = field_->interval(pow2(-bits));
  return rep_.eval_interval(lo, hi, bits + 16);
}

bool FieldElement::exact_zero() const {
  if (rep_.is_zero()) return true;
  if (is_rational()) return false;
  Polynomial g = Polynomial::gcd(rep_, field_->modulus());
  if (g.degree() < 1) return false;
  auto [lo, hi] = field_->current_interval();
  if (lo == hi) return rep_.eval(lo) == 0;
  return g.sign_at(lo) * g.sign_at(hi) < 0;
}

int FieldElement::sign() const {
  if (is_rational()) return sgn(rational_value());
  auto [lo, hi] = eval_at(64);
  if (lo > 0) return 1;
  if (hi < 0) return -1;
  if (exact_zero()) return 0;
  for (long bits = 128;; bits *= 2) {
    auto [l, h] = eval_at(bits);
    if (l > 0) return 1;
    if (h < 0) return -1;
  }
}

Integer FieldElement::floor() const {
  if (is_rational()) return floor_of(rational_value());
  Rational lo, hi;
  for (long bits = 64;; bits *= 2) {
    std::tie(lo, hi) = eval_at(bits);
    if (hi - lo < Rational(1, 2)) break;
  }
  Integer d = floor_of(lo);
  if (hi < Rational(d + 1)) return d;
  return (*this - FieldElement(Rational(d + 1))).sign() >= 0 ? Integer(d + 1) : d;
}

Enclosure FieldElement::enclosure(const Rational& width) const {
  if (is_rational()) return Enclosure(rational_value());
  long bits = std::max(64L, static_cast<long>(-betadyn::log2_abs(width)) + 8);
  for (;; bits *= 2) {
    auto [lo, hi] = eval_at(bits);
    if (hi - lo <= width) {
      FieldElement self = *this;
      return Enclosure(lo, hi, [self](const Rational& w) { return self.enclosure(w); });
    }
  }
}

double FieldElement::to_double() const {
  if (is_rational()) return betadyn::to_double(rational_value());
  Enclosure e = enclosure(pow2(-64));
  if (e.is_point()) return betadyn::to_double(e.lo());
  // Relative accuracy matters for tiny values.
  for (long bits = 128; e.lo() <= 0 && e.hi() >= 0 && !is_zero(); bits *= 2) {
    e = enclosure(pow2(-bits));
  }
  return e.midpoint();
}

double FieldElement::log2_abs() const {
  if (is_rational()) return betadyn::log2_abs(rational_value());
  if (is_zero()) throw DomainError("log2 of zero");
  for (long bits = 64;; bits *= 2) {
    auto [lo, hi] = eval_at(bits);
    if (lo > 0 || hi < 0) {
      Rational a = abs_of(lo), b = abs_of(hi);
      if (a > b) std::swap(a, b);
      // b/a <= 1 + 2^-48 gives log2 accurate to about 1e-14.
      if ((b - a) * (Integer(1) << 48) <= a) return betadyn::log2_abs((a + b) / 2);
    }
  }
}

FieldElement FieldElement::inverse() const {
  if (is_rational()) {
    if (rational_value() == 0) throw DomainError("division by zero");
    return FieldElement(Rational(1 / rational_value()));
  }
  const Polynomial& p = field_->modulus();
  Polynomial g = Polynomial::gcd(rep_, p);
  Polynomial q = p;
  if (g.degree() >= 1) {
    if (exact_zero()) throw DomainError("division by zero");
    q = Polynomial::divmod(p, g).first;
  }
  return FieldElement(field_, Polynomial::inverse_mod(rep_ % q, q));
}

std::string FieldElement::to_string() const {
  if (is_rational()) return rational_value().get_str();
  return "poly" + rep_.to_string() + " in " + field_->literal();
}

namespace {

FieldElement aligned(const FieldElement& x, const FieldPtr& f) {
  if (!f || x.is_rational() || x.field() == f) return x;
  return *x.embed_into(f);
}

}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  if (a.is_rational() && b.is_rational()) return FieldElement(Rational(a.rational_value() + b.rational_value()));
  FieldPtr f = FieldElement::common_field(a, b);
  return FieldElement(f, aligned(a, f).rep_ + aligned(b, f).rep_);
}

FieldElement operator-(const FieldElement& a) {
  FieldElement r = a;
  r.rep_ = -a.rep_;
  return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  if (a.is_rational() && b.is_rational()) return FieldElement(Rational(a.rational_value() - b.rational_value()));
  FieldPtr f = FieldElement::common_field(a, b);
  return FieldElement(f, aligned(a, f).rep_ - aligned(b, f).rep_);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (a.is_rational() && b.is_rational()) return FieldElement(Rational(a.rational_value() * b.rational_value()));
  FieldPtr f = FieldElement::common_field(a, b);
  if (a.is_rational()) return FieldElement(f, a.rational_value() * aligned(b, f).rep_);
  if (b.is_rational()) return FieldElement(f, b.rational_value() * aligned(a, f).rep_);
  return FieldElement(f, aligned(a, f).rep_ * aligned(b, f).rep_);
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement pow(const FieldElement& x, long e) {
  FieldElement base = e < 0 ? x.inverse() : x;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  FieldElement r(1);
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

}  // namespace betadyn
