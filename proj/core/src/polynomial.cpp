#include "betadyn/polynomial.hpp"

#include <algorithm>

#include "betadyn/errors.hpp"

namespace betadyn {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& Polynomial::leading() const {
  if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
  return c_.back();
}

Rational Polynomial::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

namespace {

Integer scaled_floor(const Rational& q, long bits) {
  Integer num = q.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer scaled_ceil(const Rational& q, long bits) {
  Integer num = q.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational unscale(const Integer& z, long bits) {
  Rational r(z);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
  return r;
}

}  // namespace

std::pair<Rational, Rational> Polynomial::eval_interval(const Rational& lo, const Rational& hi,
                                                        long bits) const {
  if (c_.empty()) return {Rational(0), Rational(0)};
  if (lo == hi) {
    Rational v = eval(lo);
    return {v, v};
  }
  const Integer xl = scaled_floor(lo, bits);
  const Integer xh = scaled_ceil(hi, bits);
  Integer al = scaled_floor(c_.back(), bits);
  Integer ah = scaled_ceil(c_.back(), bits);
  Integer p1, p2, p3, p4, lo_prod, hi_prod;
  for (std::size_t i = c_.size() - 1; i-- > 0;) {
    p1 = al * xl;
    p2 = al * xh;
    p3 = ah * xl;
    p4 = ah * xh;
    lo_prod = std::min({p1, p2, p3, p4});
    hi_prod = std::max({p1, p2, p3, p4});
    mpz_fdiv_q_2exp(al.get_mpz_t(), lo_prod.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
    mpz_cdiv_q_2exp(ah.get_mpz_t(), hi_prod.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
    al += scaled_floor(c_[i], bits);
    ah += scaled_ceil(c_[i], bits);
  }
  return {unscale(al, bits), unscale(ah, bits)};
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return {};
  Rational inv = 1 / leading();
  return inv * *this;
}

Polynomial Polynomial::primitive() const {
  if (c_.empty()) return {};
  Integer l(1);
  for (const auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> z;
  z.reserve(c_.size());
  Integer g(0);
  for (const auto& c : c_) {
    Integer v = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    z.push_back(std::move(v));
  }
  if (c_.back() < 0) g = -g;
  std::vector<Rational> out;
  out.reserve(z.size());
  for (auto& v : z) out.emplace_back(Integer(v / g));
  return Polynomial(std::move(out));
}

Polynomial Polynomial::squarefree() const {
  if (degree() <= 0) return *this;
  Polynomial g = gcd(*this, derivative());
  return divmod(*this, g).first.primitive();
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a) {
  Polynomial r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(r));
}

Polynomial operator*(const Rational& s, const Polynomial& a) {
  if (s == 0) return {};
  Polynomial r = a;
  for (auto& c : r.c_) c *= s;
  return r;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial(), a};
  std::vector<Rational> rem = a.c_;
  std::vector<Rational> quo(a.c_.size() - b.c_.size() + 1, Rational(0));
  const Rational inv_lead = 1 / b.leading();
  const std::size_t db = b.c_.size() - 1;
  for (std::size_t k = quo.size(); k-- > 0;) {
    Rational q = rem[k + db] * inv_lead;
    quo[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.c_[j];
  }
  rem.resize(db);
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    // Keep coefficient growth in check.
    x = std::move(y);
    y = r.is_zero() ? r : r.primitive();
  }
  return x.monic();
}

Polynomial Polynomial::inverse_mod(const Polynomial& a, const Polynomial& m) {
  // Extended Euclid: track s with s*a = r (mod m).
  Polynomial r0 = m, r1 = a % m;
  Polynomial s0, s1 = constant(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Polynomial s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw DomainError("polynomial is not invertible modulo the modulus");
  return ((1 / r0.leading()) * s0) % m;
}

int Polynomial::count_roots(const Rational& a, const Rational& b) const {
  if (is_zero()) throw DomainError("count_roots of zero polynomial");
  if (!(a < b)) return 0;
  std::vector<Polynomial> seq{*this, derivative()};
  while (!seq.back().is_zero()) {
    Polynomial r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    // Positive rescaling keeps signs and bounds coefficient growth.
    Polynomial p = r.primitive();
    if (sgn(p.leading()) != sgn(r.leading())) p = -p;
    seq.push_back(-p);
  }
  auto variations = [&](const Rational& x) {
    int count = 0, last = 0;
    for (const auto& p : seq) {
      int s = p.sign_at(x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return variations(a) - variations(b);
}

std::string Polynomial::to_string() const {
  std::string s = "[";
  if (c_.empty()) s += "0";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += c_[i].get_str();
  }
  return s + "]";
}

}  // namespace betadyn
