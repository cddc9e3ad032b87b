#include "betadyn/literal.hpp"

#include <cctype>
#include <vector>

#include "betadyn/errors.hpp"

namespace betadyn {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view es = s.substr(e + 1);
    bool eneg = false;
    if (!es.empty() && (es.front() == '-' || es.front() == '+')) {
      eneg = es.front() == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 6) throw ParseError("bad exponent in '" + std::string(whole) + "'");
    exp10 = std::stol(std::string(es)) * (eneg ? -1 : 1);
    s = s.substr(0, e);
  }
  std::string_view ip = s, fp;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    ip = s.substr(0, dot);
    fp = s.substr(dot + 1);
  }
  if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
      (!fp.empty() && !all_digits(fp))) {
    throw ParseError("not a number: '" + std::string(whole) + "'");
  }
  Integer num(std::string(ip) + std::string(fp), 10);
  Integer ten_pow;
  long scale = static_cast<long>(fp.size()) - exp10;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r = scale >= 0 ? Rational(num, ten_pow) : Rational(num * ten_pow);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

std::vector<Rational> parse_list(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ParseError("expected [..] list in '" + std::string(whole) + "'");
  }
  s = s.substr(1, s.size() - 2);
  std::vector<Rational> out;
  while (true) {
    auto comma = s.find(',');
    out.push_back(parse_rational(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty number literal");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational p = parse_decimal(trim(s.substr(0, slash)), text);
    Rational q = parse_decimal(trim(s.substr(slash + 1)), text);
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return p / q;
  }
  return parse_decimal(s, text);
}

FieldElement parse_literal(std::string_view text) {
  std::string_view s = trim(text);
  constexpr std::string_view prefix = "root:";
  if (s.substr(0, prefix.size()) != prefix) return FieldElement(parse_rational(s));
  s.remove_prefix(prefix.size());
  auto at = s.find('@');
  if (at == std::string_view::npos) throw ParseError("missing '@[a,b]' in '" + std::string(text) + "'");
  Polynomial p(parse_list(s.substr(0, at), text));
  std::vector<Rational> bounds = parse_list(s.substr(at + 1), text);
  if (bounds.size() != 2 || bounds[0] > bounds[1]) {
    throw ParseError("interval must be [a,b] with a <= b in '" + std::string(text) + "'");
  }
  if (p.degree() < 1) throw ParseError("polynomial must be non-constant in '" + std::string(text) + "'");
  const Rational& a = bounds[0];
  const Rational& b = bounds[1];
  p = p.squarefree();
  const bool root_a = p.sign_at(a) == 0, root_b = p.sign_at(b) == 0;
  int roots = p.count_roots(a, b) + (root_a ? 1 : 0);
  if (roots != 1) {
    throw ParseError("polynomial has " + std::to_string(roots) + " roots in [a,b] in '" +
                     std::string(text) + "'");
  }
  if (root_a) return FieldElement(a);
  if (root_b) return FieldElement(b);
  if (p.degree() == 1) return FieldElement(Rational(-p.coeff(0) / p.coeff(1)));
  FieldPtr field = NumberField::create(p, a, b);
  // A rational root of the primitive form has denominator dividing the
  // leading coefficient, so narrowing below 1/(4 lead) pins the candidate.
  const Polynomial& q = field->modulus();
  const Integer lead = q.leading().get_num();
  auto [lo, hi] = field->interval(Rational(1, 4) / Rational(lead));
  Rational scaled = (lo + hi) / 2 * Rational(lead);
  Rational candidate(floor_of(scaled + Rational(1, 2)), lead);
  candidate.canonicalize();
  if (q.sign_at(candidate) == 0) return FieldElement(candidate);
  return FieldElement::generator(field);
}

std::string format_literal(const FieldElement& x) {
  if (x.is_rational()) return x.rational_value().get_str();
  const Polynomial& rep = x.rep();
  if (rep.degree() == 1 && rep.coeff(0) == 0 && rep.coeff(1) == 1) return x.field()->literal();
  return x.to_string();
}

}  // namespace betadyn
