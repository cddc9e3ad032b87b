#include "betadyn/exponents.hpp"

#include <algorithm>
#include <cmath>

#include "betadyn/admissibility.hpp"
#include "betadyn/errors.hpp"

namespace betadyn {

namespace {

// log2|a - x0|; nullopt when a = x0 exactly.
std::optional<double> log2_gap(const FieldElement& a, const Real& x0) {
  if (const auto* f = std::get_if<FieldElement>(&x0)) {
    FieldElement d = a - *f;
    if (d.is_zero()) return std::nullopt;
    return d.log2_abs();
  }
  const auto& e0 = std::get<Enclosure>(x0);
  const PrecisionBudget budget = default_budget();
  for (long bits = 64;; bits *= 2) {
    Enclosure e = a.enclosure(pow2(-bits)) - refine(e0, pow2(-bits));
    if (e.lo() > 0 || e.hi() < 0) {
      Rational lo = abs_of(e.lo()), hi = abs_of(e.hi());
      if (lo > hi) std::swap(lo, hi);
      if ((hi - lo) * pow2(30) <= lo) return log2_abs((lo + hi) / 2);
    }
    if (bits >= budget.min_width_bits) {
      throw PrecisionExhausted("cannot separate orbit point from x0 within the precision budget");
    }
  }
}

std::optional<double> log2_gap(const Orbit& orbit, const Real& x0) {
  if (orbit.exact()) return log2_gap(orbit.exact_value(), x0);
  const PrecisionBudget budget = default_budget();
  for (long bits = 64;; bits *= 2) {
    Enclosure e = orbit.value(pow2(-bits)) - enclose(x0, pow2(-bits));
    if (e.lo() > 0 || e.hi() < 0) {
      Rational lo = abs_of(e.lo()), hi = abs_of(e.hi());
      if (lo > hi) std::swap(lo, hi);
      if ((hi - lo) * pow2(30) <= lo) return log2_abs((lo + hi) / 2);
    }
    if (bits >= budget.min_width_bits) {
      throw PrecisionExhausted("cannot separate orbit point from x0 within the precision budget");
    }
  }
}

std::size_t window_start_for(std::size_t horizon, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("window fraction must lie in (0,1]");
  auto len = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(horizon)));
  len = std::clamp<std::size_t>(len, 1, horizon);
  return horizon - len + 1;
}

void finalize(ExponentEstimate& est) {
  const std::size_t count = est.dist_log.size();
  est.v_seq.resize(count);
  est.vhat_seq.resize(count);
  double best_ratio = 0, best = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double n = static_cast<double>(i + 1);
    best_ratio = std::max(best_ratio, est.dist_log[i] / n);
    best = std::max(best, est.dist_log[i]);
    est.v_seq[i] = best_ratio;
    est.vhat_seq[i] = best / n;
  }
  if (est.exact_hit) {
    est.v_tail = kInfinity;
    est.vhat_tail = kInfinity;
    return;
  }
  double v_tail = 0, vhat_tail = kInfinity;
  for (std::size_t N = est.window_start; N <= est.horizon; ++N) {
    v_tail = std::max(v_tail, est.dist_log[N - 1] / static_cast<double>(N));
    vhat_tail = std::min(vhat_tail, est.vhat_seq[N - 1]);
  }
  est.v_tail = v_tail;
  est.vhat_tail = std::max(0.0, vhat_tail);
}

ExponentEstimate start(std::size_t horizon, const EstimateOptions& opts) {
  if (horizon < 10) throw DomainError("horizon must be >= 10");
  ExponentEstimate est;
  est.horizon = horizon;
  est.window_fraction = opts.window_fraction;
  est.window_start = window_start_for(horizon, opts.window_fraction);
  est.dist_log.reserve(horizon);
  return est;
}

}  // namespace

Enclosure orbit_distance(const BetaParam& bp, const Real& x, const Real& x0, std::size_t n) {
  Orbit orbit(bp, x);
  for (std::size_t i = 0; i < n; ++i) orbit.step();
  if (orbit.exact()) {
    if (const auto* f = std::get_if<FieldElement>(&x0)) {
      FieldElement d = orbit.exact_value() - *f;
      if (d.is_rational()) return Enclosure(abs_of(d.rational_value()));
      if (d.is_zero()) return Enclosure(Rational(0));
      return abs(d.enclosure());
    }
  }
  const auto& e0 = std::get_if<Enclosure>(&x0);
  Enclosure a = orbit.value(pow2(-64));
  Enclosure b = e0 ? *e0 : enclose(x0);
  return abs(a - b);
}

ExponentEstimate estimate_exponents(const BetaParam& bp, const Real& x, const Real& x0,
                                    std::size_t horizon, const EstimateOptions& opts) {
  ExponentEstimate est = start(horizon, opts);
  const double log2b = bp.log2_beta();
  Orbit orbit(bp, x);
  for (std::size_t n = 1; n <= horizon; ++n) {
    orbit.step();
    auto g = log2_gap(orbit, x0);
    if (!g) {
      est.dist_log.push_back(kInfinity);
      est.exact_hit = n;
      break;
    }
    est.dist_log.push_back(-*g / log2b);
  }
  finalize(est);
  DigitWord xd = orbit.digits();
  est.runs = run_decomposition(xd, expand(bp, x0, xd.size()));
  return est;
}

ExponentEstimate estimate_exponents(const BetaParam& bp, const DigitWord& x_digits,
                                    const Real& x0, std::size_t horizon,
                                    const EstimateOptions& opts) {
  ExponentEstimate est = start(horizon, opts);
  const std::size_t L = x_digits.size();
  if (L <= horizon) throw DepthTooSmall("digit word must be longer than the horizon");
  if (!is_admissible(bp, x_digits)) throw NotAdmissible("digits of x are not admissible");
  const double log2b = bp.log2_beta();

  Orbit x0_orbit(bp, x0);
  std::vector<Digit> e0;
  auto x0_upto = [&](std::size_t n) {
    while (e0.size() < n) e0.push_back(x0_orbit.step());
  };
  x0_upto(L);
  const auto agree = match_lengths(x_digits.digits(), e0);

  // With M agreeing digits, T^n x - x0 = beta^-M (T^{n+M} x - T^M x0), and
  // both terms are read from K-digit windows after the first mismatch. A
  // greedy tail after K digits is below beta^-K, so 40 bits of headroom keep
  // D(n) accurate to ~1e-12.
  constexpr double kHeadroom = 40.0;
  constexpr std::size_t kExactAfter = 1024;
  for (std::size_t n = 1; n <= horizon; ++n) {
    const std::size_t M = agree[n];
    std::optional<double> g;
    bool exact = false;
    for (std::size_t K = 64;; K *= 2) {
      const std::size_t from = n + M;
      const std::size_t a_end = std::min(L, from + K);
      if (a_end == L && K > kExactAfter) {
        exact = true;
        break;
      }
      x0_upto(M + K);
      FieldElement A = evaluate(bp, x_digits.slice(from, a_end - from));
      FieldElement B = evaluate(bp, DigitWord(std::vector<Digit>(
                                        e0.begin() + static_cast<std::ptrdiff_t>(M),
                                        e0.begin() + static_cast<std::ptrdiff_t>(M + K))));
      FieldElement d = A - B;
      if (!d.is_zero()) {
        const double lg = d.log2_abs();
        if (lg > -static_cast<double>(K) * log2b + kHeadroom) {
          g = lg - static_cast<double>(M) * log2b;
          break;
        }
      }
    }
    if (exact) g = log2_gap(evaluate(bp, x_digits.drop(n)), x0);
    if (!g) {
      est.dist_log.push_back(kInfinity);
      est.exact_hit = n;
      break;
    }
    est.dist_log.push_back(-*g / log2b);
  }
  finalize(est);
  est.runs = run_decomposition(x_digits, DigitWord(std::vector<Digit>(e0.begin(), e0.begin() + static_cast<std::ptrdiff_t>(L))));
  return est;
}

std::vector<std::size_t> match_lengths(const std::vector<Digit>& s,
                                       const std::vector<Digit>& pattern) {
  // Z-function of pattern # s.
  std::vector<Digit> t;
  t.reserve(pattern.size() + 1 + s.size());
  t.insert(t.end(), pattern.begin(), pattern.end());
  t.push_back(-1);
  t.insert(t.end(), s.begin(), s.end());
  const std::size_t n = t.size();
  std::vector<std::size_t> z(n, 0);
  std::size_t l = 0, r = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (i < r) z[i] = std::min(r - i, z[i - l]);
    while (i + z[i] < n && t[z[i]] == t[i + z[i]]) ++z[i];
    if (i + z[i] > r) {
      l = i;
      r = i + z[i];
    }
  }
  return std::vector<std::size_t>(z.begin() + static_cast<std::ptrdiff_t>(pattern.size() + 1),
                                  z.end());
}

std::vector<RunRecord> maximal_runs(const DigitWord& x_digits, const DigitWord& x0_digits) {
  std::vector<RunRecord> out;
  if (x_digits.size() < 2 || x0_digits.empty()) return out;
  const auto lens = match_lengths(x_digits.digits(), x0_digits.digits());
  std::size_t max_end = 0;
  for (std::size_t n = 1; n < x_digits.size(); ++n) {
    const std::size_t L = lens[n];
    if (L == 0 || n + L <= max_end) continue;
    RunRecord r;
    r.n = n;
    r.m = n + L + 1;
    r.open_ended = n + L == x_digits.size() || L == x0_digits.size();
    out.push_back(r);
    max_end = n + L;
  }
  return out;
}

std::vector<RunRecord> run_decomposition(const DigitWord& x_digits, const DigitWord& x0_digits) {
  std::vector<RunRecord> all = maximal_runs(x_digits, x0_digits);
  std::vector<RunRecord> out;
  for (const auto& r : all) {
    if (out.empty() || r.m - r.n > out.back().m - out.back().n) out.push_back(r);
  }
  return out;
}

}  // namespace betadyn
