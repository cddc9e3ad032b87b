#include "betadyn/beta_core.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "betadyn/admissibility.hpp"
#include "betadyn/errors.hpp"
#include "betadyn/literal.hpp"

namespace betadyn {

// ---------------------------------------------------------------- DigitWord

DigitWord::DigitWord(std::vector<Digit> digits, std::optional<Digit> alphabet_top)
    : d_(std::move(digits)), top_(alphabet_top) {
  for (Digit d : d_) {
    if (d < 0 || (top_ && d > *top_)) {
      throw DomainError("digit " + std::to_string(d) + " outside the alphabet");
    }
  }
}

void DigitWord::push_back(Digit d) {
  if (d < 0 || (top_ && d > *top_)) throw DomainError("digit outside the alphabet");
  d_.push_back(d);
}

void DigitWord::append(const DigitWord& w) {
  for (Digit d : w) push_back(d);
}

DigitWord DigitWord::prefix(std::size_t n) const { return slice(0, n); }

DigitWord DigitWord::drop(std::size_t from) const {
  return from >= d_.size() ? DigitWord({}, top_) : slice(from, d_.size() - from);
}

DigitWord DigitWord::slice(std::size_t from, std::size_t count) const {
  from = std::min(from, d_.size());
  count = std::min(count, d_.size() - from);
  DigitWord w;
  w.top_ = top_;
  w.d_.assign(d_.begin() + static_cast<std::ptrdiff_t>(from),
              d_.begin() + static_cast<std::ptrdiff_t>(from + count));
  return w;
}

std::string DigitWord::to_string() const {
  std::string s;
  s.reserve(d_.size() * 2);
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(d_[i]);
  }
  return s;
}

DigitWord DigitWord::parse(std::string_view text) {
  std::vector<Digit> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(token, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != token.size() || v < 0) throw ParseError("bad digit '" + token + "'");
    out.push_back(v);
    token.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == ',' || c == '\t' || c == '\n' || c == '\r' || c == '(' || c == ')') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return DigitWord(std::move(out));
}

DigitWord operator+(const DigitWord& a, const DigitWord& b) {
  DigitWord r = a;
  r.d_.insert(r.d_.end(), b.d_.begin(), b.d_.end());
  return r;
}

// -------------------------------------------------------------- DigitStream

DigitStream::DigitStream(Producer producer) : state_(std::make_shared<State>()) {
  state_->producer = std::move(producer);
}

Digit DigitStream::at(std::size_t i) const {
  std::lock_guard lock(state_->mutex);
  while (state_->memo.size() <= i) state_->memo.push_back(state_->producer(state_->memo.size()));
  return state_->memo[i];
}

DigitWord DigitStream::prefix(std::size_t n) const {
  if (n > 0) at(n - 1);
  std::lock_guard lock(state_->mutex);
  return DigitWord(std::vector<Digit>(state_->memo.begin(),
                                      state_->memo.begin() + static_cast<std::ptrdiff_t>(n)));
}

// ---------------------------------------------------------------- BetaParam

struct BetaParam::Impl {
  FieldElement beta;
  std::string literal;
  Digit top = 0;
  bool integer = false;
  double log2b = 0;

  std::mutex mutex;
  std::vector<FieldElement> tpow{FieldElement(1)};
  std::vector<Digit> digits;  // digits[i] = d_{i+1}
  std::optional<std::size_t> terminated;

  std::optional<DigitStream> d1s;
  std::optional<DigitStream> eps;

  // Requires the lock.
  void extend(std::size_t count) {
    while (digits.size() < count) {
      if (terminated) {
        digits.push_back(0);
        tpow.push_back(FieldElement(0));
        continue;
      }
      FieldElement y = beta * tpow.back();
      Integer d = y.floor();
      FieldElement next = y - FieldElement(Rational(d));
      digits.push_back(static_cast<Digit>(d.get_si()));
      if (next.is_zero()) terminated = digits.size();
      tpow.push_back(std::move(next));
    }
  }

  Digit d1(std::size_t i) {
    std::lock_guard lock(mutex);
    extend(i);
    return digits[i - 1];
  }

  Digit eps_star(std::size_t i) {
    std::lock_guard lock(mutex);
    extend(i);
    if (!terminated || *terminated > i) return digits[i - 1];
    std::size_t m = *terminated;
    std::size_t r = (i - 1) % m + 1;
    return digits[r - 1] - (r == m ? 1 : 0);
  }
};

BetaParam::BetaParam(const FieldElement& beta, std::string literal)
    : impl_(std::make_shared<Impl>()) {
  if (beta <= FieldElement(1)) throw DomainError("beta must be > 1");
  Impl& im = *impl_;
  im.beta = beta;
  im.literal = literal.empty() ? format_literal(beta) : std::move(literal);
  im.integer = beta.is_rational() && beta.rational_value().get_den() == 1;
  Integer fl = beta.floor();
  if (!fl.fits_sint_p() || fl > 1000000) throw DomainError("beta too large");
  im.top = static_cast<Digit>(fl.get_si()) - (im.integer ? 1 : 0);
  im.log2b = beta.log2_abs();
  Impl* raw = impl_.get();
  im.d1s.emplace([raw](std::size_t i) { return raw->d1(i + 1); });
  im.eps.emplace([raw](std::size_t i) { return raw->eps_star(i + 1); });
}

BetaParam BetaParam::from_literal(std::string_view literal) {
  return BetaParam(parse_literal(literal), std::string(literal));
}

const FieldElement& BetaParam::beta() const { return impl_->beta; }
Enclosure BetaParam::beta_enclosure(const Rational& width) const {
  return impl_->beta.enclosure(width);
}
const std::string& BetaParam::literal() const { return impl_->literal; }
Digit BetaParam::alphabet_top() const { return impl_->top; }
bool BetaParam::is_integer() const { return impl_->integer; }
double BetaParam::log2_beta() const { return impl_->log2b; }
double BetaParam::to_double() const { return impl_->beta.to_double(); }

FieldElement BetaParam::t_power_one(std::size_t j) const {
  std::lock_guard lock(impl_->mutex);
  impl_->extend(j);
  return impl_->tpow[j];
}

Digit BetaParam::d1(std::size_t i) const {
  if (i == 0) throw DomainError("digit positions are 1-based");
  return impl_->d1(i);
}

DigitWord BetaParam::d1_prefix(std::size_t n) const { return impl_->d1s->prefix(n); }

Digit BetaParam::eps_star(std::size_t i) const {
  if (i == 0) throw DomainError("digit positions are 1-based");
  return impl_->eps_star(i);
}

std::optional<std::size_t> BetaParam::simple_parry_within(std::size_t horizon) const {
  std::lock_guard lock(impl_->mutex);
  impl_->extend(horizon);
  if (impl_->terminated && *impl_->terminated <= horizon) return impl_->terminated;
  return std::nullopt;
}

const DigitStream& BetaParam::d1_stream() const { return *impl_->d1s; }
const DigitStream& BetaParam::eps_star_stream() const { return *impl_->eps; }

// -------------------------------------------------------------------- Points

Real make_point(const BetaParam& bp, const FieldElement& x) {
  if (auto e = x.embed_into(bp.beta().field())) return *e;
  return x.enclosure(pow2(-64));
}

Real make_point(const BetaParam& bp, std::string_view literal) {
  return make_point(bp, parse_literal(literal));
}

Enclosure enclose(const Real& x, const Rational& width) {
  if (const auto* f = std::get_if<FieldElement>(&x)) return f->enclosure(width);
  return refine(std::get<Enclosure>(x), width);
}

bool is_exact(const Real& x) { return std::holds_alternative<FieldElement>(x); }

namespace {

void check_unit_interval(const FieldElement& x) {
  if (x.sign() < 0 || x > FieldElement(1)) throw DomainError("point outside [0,1]");
}

Enclosure check_unit_interval(const Enclosure& x) {
  Enclosure e = x;
  if (e.hi() < 0 || e.lo() > 1) throw DomainError("point outside [0,1]");
  if (e.lo() < 0 || e.hi() > 1) e = refine(e, pow2(-256));
  if (e.hi() < 0 || e.lo() > 1) throw DomainError("point outside [0,1]");
  if (e.lo() < 0 || e.hi() > 1) throw PrecisionExhausted("cannot certify point lies in [0,1]");
  return e;
}

Enclosure round_out(const Enclosure& e, long bits) {
  Rational s = pow2(bits);
  Rational lo = Rational(floor_of(e.lo() * s)) / s;
  Rational hi = Rational(ceil_of(e.hi() * s)) / s;
  return Enclosure(std::move(lo), std::move(hi));
}

}  // namespace

FieldElement t_beta_step(const BetaParam& bp, const FieldElement& x) {
  check_unit_interval(x);
  FieldElement y = bp.beta() * x;
  return y - FieldElement(Rational(y.floor()));
}

Enclosure t_beta_step(const BetaParam& bp, const Enclosure& x) {
  Enclosure e = check_unit_interval(x);
  Enclosure beta = bp.beta_enclosure();
  Enclosure y = beta * e;
  Integer d = floor_separated(y);
  return y - Enclosure(Rational(d));
}

Real t_beta_step(const BetaParam& bp, const Real& x) {
  if (const auto* f = std::get_if<FieldElement>(&x)) return t_beta_step(bp, *f);
  return t_beta_step(bp, std::get<Enclosure>(x));
}

// --------------------------------------------------------------------- Orbit

Orbit::Orbit(BetaParam bp, Real x) : bp_(std::move(bp)), digits_({}, std::nullopt) {
  if (auto* f = std::get_if<FieldElement>(&x)) {
    check_unit_interval(*f);
    exact_ = *f;
  } else {
    start_ = check_unit_interval(std::get<Enclosure>(x));
  }
}

Enclosure Orbit::opaque_value(long bits) const {
  Enclosure beta = round_out(bp_.beta_enclosure(pow2(-bits)), bits);
  Enclosure y = round_out(refine(start_, pow2(-bits)), bits);
  for (Digit d : digits_) y = round_out(beta * y - Enclosure(Rational(d)), bits);
  return y;
}

Enclosure Orbit::value(const Rational& width) const {
  if (exact_) return exact_->enclosure(width);
  const double growth = std::log2(bp_.to_double() + 1.0);
  long bits = static_cast<long>(-log2_abs(width) + static_cast<double>(n_) * growth) + 16;
  for (;; bits += bits / 2) {
    Enclosure e = opaque_value(bits);
    if (e.width() <= width) {
      Orbit self = *this;
      return Enclosure(e.lo(), e.hi(), [self](const Rational& w) { return self.value(w); });
    }
  }
}

Digit Orbit::step() {
  Digit d = 0;
  if (exact_) {
    FieldElement y = bp_.beta() * *exact_;
    Integer f = y.floor();
    d = static_cast<Digit>(f.get_si());
    exact_ = y - FieldElement(Rational(f));
  } else {
    Enclosure beta = bp_.beta_enclosure();
    Enclosure y = beta * value(pow2(-64));
    d = static_cast<Digit>(floor_separated(y).get_si());
  }
  digits_.push_back(d);
  ++n_;
  return d;
}

// ----------------------------------------------------------------- Expansion

DigitWord expand_one(const BetaParam& bp, std::size_t n) { return bp.d1_prefix(n); }

DigitWord expand(const BetaParam& bp, const Real& x, std::size_t n) {
  if (const auto* f = std::get_if<FieldElement>(&x); f && *f == FieldElement(1)) {
    return expand_one(bp, n);
  }
  Orbit orbit(bp, x);
  std::vector<Digit> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(orbit.step());
  return DigitWord(std::move(out), bp.alphabet_top());
}

FieldElement evaluate(const BetaParam& bp, const DigitWord& w) {
  FieldElement inv = bp.beta().inverse();
  FieldElement v(0);
  for (auto it = w.digits().rbegin(); it != w.digits().rend(); ++it) {
    v = (v + FieldElement(Rational(*it))) * inv;
  }
  return v;
}

DigitWord eps_star_prefix(const BetaParam& bp, std::size_t n) {
  return bp.eps_star_stream().prefix(n);
}

std::optional<std::size_t> is_simple_parry_within(const BetaParam& bp, std::size_t horizon) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  return bp.simple_parry_within(horizon);
}

FieldElement solve_beta_n_exact(const DigitWord& prefix, std::size_t N) {
  if (N < 1 || prefix.size() < N) throw InvalidPrefix("need at least N digits");
  DigitWord w = prefix.prefix(N);
  if (w[N - 1] == 0) throw InvalidPrefix("last digit of the prefix is 0");
  if (!is_self_admissible(w)) throw InvalidPrefix("prefix is not self-admissible");
  long sum = 0;
  for (Digit d : w) sum += d;
  if (sum <= 1) throw InvalidPrefix("prefix " + w.to_string() + " has root 1, not > 1");
  std::vector<Rational> c(N + 1, Rational(0));
  c[N] = 1;
  for (std::size_t i = 1; i <= N; ++i) c[N - i] = -w[i - 1];
  Polynomial p = Polynomial(std::move(c)).squarefree();
  const Rational lo(1), hi(1 + sum);
  if (p.degree() == 1) return FieldElement(Rational(-p.coeff(0) / p.coeff(1)));
  FieldPtr field = NumberField::create(p, lo, hi);
  auto [a, b] = field->interval(Rational(1, 4));
  Integer candidate = ceil_of(a);
  if (Rational(candidate) <= b && p.sign_at(Rational(candidate)) == 0) {
    return FieldElement(Rational(candidate));
  }
  return FieldElement::generator(field);
}

Enclosure solve_beta_n(const DigitWord& prefix, std::size_t N, const Rational& width) {
  return solve_beta_n_exact(prefix, N).enclosure(width);
}

BetaParam beta_n_param(const BetaParam& bp, std::size_t N) {
  return BetaParam(solve_beta_n_exact(eps_star_prefix(bp, N), N));
}

// ---------------------------------------------------------------- Digit files

void write_digit_file(std::ostream& out, const BetaParam& bp, const DigitWord& w) {
  out << "beta=" << bp.literal() << " alphabet_top=" << bp.alphabet_top() << " n=" << w.size()
      << '\n'
      << w.to_string() << '\n';
  if (!out) throw IoError("failed to write digit file");
}

DigitFile read_digit_file(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw IoError("digit file is empty");
  DigitFile f;
  std::istringstream hs(header);
  std::string field;
  std::optional<std::size_t> n;
  bool have_top = false;
  while (hs >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError("bad digit file header field '" + field + "'");
    std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    try {
      if (key == "beta") {
        f.beta_literal = value;
      } else if (key == "alphabet_top") {
        f.alphabet_top = std::stoi(value);
        have_top = true;
      } else if (key == "n") {
        n = std::stoul(value);
      } else {
        throw ParseError("unknown digit file header key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw ParseError("bad value in digit file header field '" + field + "'");
    }
  }
  if (f.beta_literal.empty() || !have_top || !n) throw ParseError("incomplete digit file header");
  std::string line;
  std::getline(in, line);
  DigitWord w = DigitWord::parse(line);
  if (w.size() != *n) throw ParseError("digit count does not match header n");
  f.word = DigitWord(w.digits(), f.alphabet_top);
  return f;
}

}  // namespace betadyn
