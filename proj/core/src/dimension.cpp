#include "betadyn/dimension.hpp"

#include <algorithm>
#include <cmath>

#include "betadyn/errors.hpp"

namespace betadyn {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Empty:
      return "empty";
    case Regime::Boundary:
      return "boundary";
    case Regime::Interior:
      return "interior";
  }
  return "?";
}

double DimResult::as_double() const {
  if (!value) throw EmptyRegime("empty set has no dimension value");
  return to_double(*value);
}

DimResult dim_formula(const Rational& v, const Rational& vhat) {
  if (!(v > 0)) throw DomainError("v must be positive");
  if (!(vhat > 0 && vhat < 1)) throw DomainError("vhat must lie in (0,1)");
  const Rational lhs = v * (1 - vhat);
  DimResult r;
  if (lhs < vhat) return r;
  Rational value = (v - vhat - v * vhat) / ((1 + v) * (v - vhat));
  if (value < 0 || value > 1) throw VerificationFailed("dimension value outside [0,1]");
  r.regime = lhs == vhat ? Regime::Boundary : Regime::Interior;
  r.value = value;
  return r;
}

DimResult dim_formula(double v, double vhat) {
  if (!std::isfinite(v) || !std::isfinite(vhat)) throw DomainError("non-finite input");
  return dim_formula(rational_from_double(v), rational_from_double(vhat));
}

Rational dim_hat_formula(const Rational& vhat) {
  if (vhat < 0 || vhat > 1) throw DomainError("vhat must lie in [0,1]");
  Rational r = (1 - vhat) / (1 + vhat);
  return r * r;
}

double dim_hat_formula(double vhat) {
  if (!(vhat >= 0 && vhat <= 1)) throw DomainError("vhat must lie in [0,1]");
  const double r = (1 - vhat) / (1 + vhat);
  return r * r;
}

double analytic_v_star(double vhat) { return 2 * vhat / (1 - vhat); }

MaxOverV dim_formula_max_over_v(double vhat, double cap_extra) {
  if (!(vhat > 0 && vhat < 1)) throw DomainError("vhat must lie in (0,1)");
  if (!(cap_extra > 0)) throw DomainError("cap must be positive");
  auto f = [vhat](double v) { return (v - vhat - v * vhat) / ((1 + v) * (v - vhat)); };
  // The maximizer sits at twice the left end, which passes lo + cap_extra
  // once vhat > cap_extra / (cap_extra + 1).
  double a = vhat / (1 - vhat), b = std::max(a + cap_extra, 4 * a);
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-12 * (1 + std::abs(a))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double v = (a + b) / 2;
  return MaxOverV{v, f(v)};
}

double covering_dimension_estimate(const CantorSpec& spec, std::size_t n) {
  if (n < 1) throw DomainError("depth must be >= 1");
  FollowerLogCounts counts(spec.beta_n_automaton());
  double log2_count = 0;
  for (const Segment& seg : spec.segments_until(n)) {
    if (seg.start > n) break;
    if (seg.kind != SegmentKind::Free) continue;
    log2_count += counts.count(std::min(seg.end(), n) - seg.start + 1);
  }
  return log2_count / (static_cast<double>(n) * spec.bp().log2_beta());
}

double covering_dimension_estimate(const BetaParam& bp, std::size_t n) {
  if (n < 1) throw DomainError("depth must be >= 1");
  FollowerAutomaton fa(bp);
  FollowerLogCounts counts(fa);
  return counts.count(n) / (static_cast<double>(n) * bp.log2_beta());
}

double local_dimension_target(const CantorSpec& spec) {
  DimResult d = dim_formula(spec.v(), spec.vhat());
  return d.as_double() * spec.beta_n().log2_beta() / spec.bp().log2_beta();
}

BetaParam solve_beta_from_self_admissible(const DigitWord& w) {
  if (w.empty() || w[w.size() - 1] <= 0) {
    throw InvalidPrefix("word must be nonempty with a nonzero last digit");
  }
  for (Digit d : w) {
    if (d < 0) throw InvalidPrefix("negative digit");
  }
  if (!is_self_admissible(w)) throw NotSelfAdmissible("(" + w.to_string() + ") is not self-admissible");
  if (w.size() == 1 && w[0] == 1) throw InvalidPrefix("(1) is the expansion of 1 only for beta = 1");
  BetaParam bp(solve_beta_n_exact(w, w.size()));
  const std::size_t n = w.size();
  if (!(bp.d1_prefix(n) == w) || bp.simple_parry_within(n) != n) {
    throw VerificationFailed("expansion of 1 does not reproduce (" + w.to_string() + ")");
  }
  return bp;
}

ExponentEstimate parameter_exponents(const BetaParam& bp, const Real& x0, std::size_t horizon,
                                     const EstimateOptions& opts) {
  return estimate_exponents(bp, make_point(bp, FieldElement(1)), x0, horizon, opts);
}

ExponentEstimate parameter_exponents(const DigitWord& w, const Real& x0, std::size_t horizon,
                                     const EstimateOptions& opts) {
  return parameter_exponents(solve_beta_from_self_admissible(w), x0, horizon, opts);
}

}  // namespace betadyn
