// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

#include "betadyn/admissibility.hpp"
#include "betadyn/beta_core.hpp"
#include "betadyn/cantor.hpp"
#include "betadyn/dimension.hpp"
#include "betadyn/errors.hpp"
#include "betadyn/exponents.hpp"

using namespace betadyn;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  int failures = 0;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (++failures <= 3) detail << "failed: " << what << "; ";
  }
};

struct TestBase {
  const char* literal;
  std::vector<long> poly;  // empty for rational bases
  long num = 0, den = 1;
};

const std::vector<TestBase>& test_bases() {
  static const std::vector<TestBase> bases = {
      {"root:[-1,-1,1]@[1,2]", {-1, -1, 1}},
      {"3/2", {}, 3, 2},
      {"root:[-1,0,-1,1]@[1,2]", {-1, 0, -1, 1}},
      {"5/2", {}, 5, 2},
  };
  return bases;
}

mpf_class oracle_beta(const TestBase& b) {
  if (!b.poly.empty()) return oracle::root(b.poly, 1.0, 4.0);
  mpq_class q(b.num, b.den);
  q.canonicalize();
  return oracle::from_q(q);
}

DigitWord to_word(const oracle::Word& w) { return DigitWord(std::vector<Digit>(w.begin(), w.end())); }

Rational random_dyadic(std::mt19937_64& rng, unsigned bits) {
  Integer num = 0;
  for (unsigned i = 0; i < bits; i += 32) {
    num = num * (Integer(1) << 32) + Integer(static_cast<unsigned long>(rng() & 0xffffffffu));
  }
  Rational x(num, Integer(1) << bits);
  x.canonicalize();
  return x;
}

CantorSpec reference_spec() {
  CantorParams p;
  p.v = 2;
  p.vhat = Rational(1, 2);
  p.N = 6;
  p.beta = "2";
  p.x0 = "1/3";
  p.seed = 1;
  return CantorSpec(p);
}

// ---------------------------------------------------------------------------

void counts(Outcome& o) {
  BetaParam phi = BetaParam::from_literal("root:[-1,-1,1]@[1,2]");
  for (unsigned n = 0; n <= 20; ++n) {
    o.require(count_words(phi, n) == oracle::fibonacci(n + 2), "Fibonacci count at n=" + std::to_string(n));
  }
  std::mt19937_64 rng(1);
  std::size_t checked = 0;
  for (int i = 0; i < 10; ++i) {
    const long den = 5 + static_cast<long>(rng() % 60);
    const long num = den + 1 + static_cast<long>(rng() % static_cast<unsigned long>(3 * den - 1));
    Rational beta(num, den);
    beta.canonicalize();
    BetaParam bp{FieldElement(beta)};
    Rational power = 1;
    for (std::size_t n = 0; n <= 14; ++n) {
      const Integer c = count_words(bp, n);
      // beta^n <= c <= beta^{n+1}/(beta-1), exactly.
      o.require(power <= Rational(c), "lower bound for beta=" + beta.get_str());
      o.require(Rational(c) * (beta - 1) <= power * beta, "upper bound for beta=" + beta.get_str());
      power *= beta;
      ++checked;
    }
  }
  o.detail << "F_{n+2} for n<=20, " << checked << " bound checks";
}

void enumeration(Outcome& o) {
  constexpr std::size_t kDepth = 8;
  constexpr long kGrid = 100000;
  for (const auto& b : test_bases()) {
    BetaParam bp = BetaParam::from_literal(b.literal);
    std::set<std::vector<Digit>> found;
    // Left endpoints of every candidate word.
    for (const auto& w : oracle::all_words(bp.alphabet_top(), kDepth)) {
      FieldElement x = evaluate(bp, to_word(w));
      if (x >= FieldElement(1)) continue;
      found.insert(expand(bp, make_point(bp, x), kDepth).digits());
    }
    // Grid midpoints, expanded independently in high precision.
    const mpf_class beta = oracle_beta(b);
    for (long i = 0; i < kGrid; ++i) {
      oracle::Word w;
      if (b.poly.empty()) {
        mpq_class q(b.num, b.den), x(2 * i + 1, 2 * kGrid);
        q.canonicalize();
        x.canonicalize();
        w = oracle::greedy_q(q, x, kDepth);
      } else {
        mpq_class x(2 * i + 1, 2 * kGrid);
        x.canonicalize();
        w = oracle::greedy_f(beta, oracle::from_q(x), kDepth);
      }
      found.insert(std::vector<Digit>(w.begin(), w.end()));
    }
    for (std::size_t n = 0; n <= kDepth; ++n) {
      std::set<std::vector<Digit>> expected;
      for (const auto& w : found) expected.insert(std::vector<Digit>(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n)));
      std::set<std::vector<Digit>> got;
      for (const auto& w : enumerate_words(bp, n)) got.insert(w.digits());
      o.require(got == expected, std::string(b.literal) + " n=" + std::to_string(n));
    }
  }
  o.detail << "4 bases, n<=8, endpoints + 1e5 grid";
}

void fullness(Outcome& o) {
  std::size_t words = 0, products = 0, descendants = 0;
  std::vector<std::pair<BetaParam, DigitWord>> non_full;
  for (const auto& b : test_bases()) {
    BetaParam bp = BetaParam::from_literal(b.literal);
    const oracle::Word eps = oracle::quasi_greedy_one(oracle_beta(b), 24);
    std::vector<std::vector<oracle::Word>> tails(5);
    for (std::size_t m = 1; m <= 4; ++m) {
      for (const auto& t : oracle::all_words(bp.alphabet_top(), m)) {
        if (oracle::admissible(t, eps)) tails[m].push_back(t);
      }
    }
    for (std::size_t n = 1; n <= 8; ++n) {
      for (const auto& w : enumerate_words(bp, n)) {
        bool concat = true;
        for (std::size_t m = 1; m <= 4 && concat; ++m) {
          for (const auto& t : tails[m]) {
            oracle::Word c(w.begin(), w.end());
            c.insert(c.end(), t.begin(), t.end());
            if (!oracle::admissible(c, eps)) {
              concat = false;
              break;
            }
          }
        }
        const bool full = is_full(bp, w);
        o.require(full == concat, "concatenation oracle at " + w.to_string());
        const Cylinder cyl = cylinder(bp, w);
        o.require(cyl.is_full == full, "cylinder flag at " + w.to_string());
        ++words;
        if (!full) non_full.emplace_back(bp, w);
        if (!full || n > 4) continue;
        for (std::size_t m = 1; m <= 5; ++m) {
          for (const auto& t : enumerate_words(bp, m)) {
            const Enclosure whole = cylinder(bp, w + t).length_enclosure(pow2(-60));
            const Enclosure prod = cyl.length_enclosure(pow2(-60)) * cylinder(bp, t).length_enclosure(pow2(-60));
            const Rational diff = abs_of(Rational((whole.lo() + whole.hi()) / 2 - (prod.lo() + prod.hi()) / 2));
            o.require(diff + whole.width() + prod.width() <= Rational(1, 1000000000000000),
                      "multiplicativity at " + w.to_string());
            ++products;
          }
        }
      }
    }
  }
  std::mt19937_64 rng(3);
  std::shuffle(non_full.begin(), non_full.end(), rng);
  for (std::size_t i = 0; i < 100 && i < non_full.size(); ++i) {
    const auto& [bp, w] = non_full[i];
    const FieldElement lw = cylinder(bp, w).length;
    std::deque<DigitWord> queue{w};
    std::optional<DigitWord> found;
    while (!queue.empty() && !found) {
      DigitWord u = queue.front();
      queue.pop_front();
      for (Digit d = 0; d <= bp.alphabet_top() && !found; ++d) {
        DigitWord c = u;
        c.push_back(d);
        if (!is_admissible(bp, c)) continue;
        if (is_full(bp, c)) found = c;
        else queue.push_back(c);
      }
    }
    o.require(found.has_value(), "no full descendant of " + w.to_string());
    if (found) o.require(cylinder(bp, *found).length * bp.beta() >= lw, "factor-beta bound at " + w.to_string());
    ++descendants;
  }
  o.detail << words << " words, " << products << " products, " << descendants << " non-full samples";
}

void lemma_bounds(Outcome& o) {
  std::size_t checked = 0;
  for (const auto& b : test_bases()) {
    BetaParam bp = BetaParam::from_literal(b.literal);
    for (std::size_t N = 2; N <= 6; ++N) {
      DigitWord prefix = eps_star_prefix(bp, N);
      if (prefix[N - 1] == 0) continue;  // no beta_N for this N
      BetaParam bn = beta_n_param(bp, N);
      // Exact comparisons in the field of beta.
      for (std::size_t n = 1; n <= 12; ++n) {
        const FieldElement upper = pow(bp.beta(), -static_cast<long>(n));
        const FieldElement lower = pow(bp.beta(), -static_cast<long>(n + N));
        for (const auto& word : enumerate_words(bn, n)) {
          const FieldElement len = cylinder(bp, word).length;
          o.require(lower <= len, "lower bound at " + word.to_string());
          o.require(len <= upper, "upper bound at " + word.to_string());
          ++checked;
        }
      }
    }
  }
  o.detail << checked << " cylinders";
}

void beta_n_chain(Outcome& o) {
  for (const char* lit : {"root:[-1,0,-1,1]@[1,2]", "5/2"}) {
    BetaParam bp = BetaParam::from_literal(lit);
    const Rational w = pow2(-200);
    const Enclosure be = bp.beta_enclosure(w);
    const double beta = bp.to_double();
    std::optional<Enclosure> prev;
    double prev_gap = INFINITY, last_gap = 0;
    std::size_t used = 0;
    for (std::size_t N = 1; N <= 20; ++N) {
      DigitWord prefix = eps_star_prefix(bp, N);
      if (prefix[N - 1] == 0 || prefix == DigitWord{1}) continue;
      const Enclosure bn = solve_beta_n(prefix, N, w);
      o.require(bn.hi() < be.lo(), std::string(lit) + " beta_N below beta at N=" + std::to_string(N));
      if (prev) o.require(prev->hi() < bn.lo(), std::string(lit) + " strict increase at N=" + std::to_string(N));
      const double gap = to_double(be.hi() - bn.lo());
      // beta - beta_N <= beta * beta^{1-N}
      o.require(gap < beta * std::pow(beta, 1.0 - static_cast<double>(N)), std::string(lit) + " rate at N=" + std::to_string(N));
      o.require(gap <= prev_gap, std::string(lit) + " gap monotone at N=" + std::to_string(N));
      prev = bn;
      prev_gap = gap;
      last_gap = gap;
      ++used;
    }
    o.detail << lit << ": " << used << " values, final gap " << last_gap << "; ";
  }
}

void exponent_realization(Outcome& o) {
  CantorSpec spec = reference_spec();
  EstimateOptions opts;
  opts.window_fraction = 0.75;
  double err_v[2], err_vh[2];
  int i = 0;
  for (std::size_t horizon : {std::size_t{10000}, std::size_t{40000}}) {
    DigitWord w = construct_point(spec, spec.required_depth(horizon));
    ExponentEstimate e = estimate_exponents(spec.bp(), w, spec.x0(), horizon, opts);
    o.require(e.v_tail >= 1.9 && e.v_tail <= 2.1, "v_tail at H=" + std::to_string(horizon));
    o.require(e.vhat_tail >= 0.45 && e.vhat_tail <= 0.55, "vhat_tail at H=" + std::to_string(horizon));
    err_v[i] = std::abs(e.v_tail - 2);
    err_vh[i] = std::abs(e.vhat_tail - 0.5);
    o.detail << "H=" << horizon << " v=" << e.v_tail << " vhat=" << e.vhat_tail << "; ";
    ++i;
  }
  o.require(err_v[1] <= err_v[0] && err_vh[1] <= err_vh[0], "no improvement with depth");
}

void local_dimension(Outcome& o) {
  CantorSpec spec = reference_spec();
  const double target = local_dimension_target(spec);
  auto series = local_dimension_series(spec, 8);
  const double last = series.back().ratio;
  o.require(std::abs(last - target) <= 0.05, "ratio at k=8 too far from target");
  for (std::size_t k = 2; k < series.size(); ++k) {
    o.require(std::abs(series[k].ratio - target) < std::abs(series[k - 1].ratio - target),
              "distance to target grows at k=" + std::to_string(k + 1));
  }
  o.detail << "ratio_8=" << last << " target=" << target;
}

void measure_axioms(Outcome& o) {
  CantorSpec spec = reference_spec();
  const std::size_t limit = spec.placement(2).q;
  const auto segs = spec.segments_until(limit);
  auto determined = [&](std::size_t pos) -> std::optional<Digit> {
    for (const Segment& s : segs) {
      if (pos < s.start || pos > s.end()) continue;
      if (s.kind == SegmentKind::Free) return std::nullopt;
      const std::size_t off = pos - s.start;
      if (s.kind == SegmentKind::Copy) return spec.x0_digit(off + 1);
      return off == spec.N() ? 1 : 0;
    }
    return std::nullopt;
  };
  o.require(mu_mass(spec, 0, DigitWord{}) == 1, "total mass");
  std::size_t nodes = 0;
  Rational leaves = 0;
  std::function<void(std::vector<Digit>&)> walk = [&](std::vector<Digit>& prefix) {
    const std::size_t n = prefix.size();
    const Rational parent = mu_mass(spec, n, DigitWord(prefix));
    ++nodes;
    if (n == limit) {
      leaves += parent;
      return;
    }
    Rational sum = 0;
    std::vector<Digit> live;
    for (Digit d = 0; d <= spec.bp().alphabet_top(); ++d) {
      prefix.push_back(d);
      auto fixed = determined(n + 1);
      if (!fixed || *fixed == d) {
        const Rational child = mu_mass(spec, n + 1, DigitWord(prefix));
        o.require(child >= 0, "negative mass");
        sum += child;
        if (child > 0) live.push_back(d);
      }
      prefix.pop_back();
    }
    o.require(sum == parent, "additivity at depth " + std::to_string(n));
    for (Digit d : live) {
      prefix.push_back(d);
      walk(prefix);
      prefix.pop_back();
    }
  };
  std::vector<Digit> root;
  walk(root);
  o.require(leaves == 1, "masses at q_2 sum to 1");
  o.detail << nodes << " support nodes through q_2=" << limit;
}

void regime_guard(Outcome& o) {
  for (int i = 1; i <= 50; ++i) {
    for (int j = 1; j <= 50; ++j) {
      Rational v(i, 10), vhat(j, 51);
      v.canonicalize();
      vhat.canonicalize();
      const DimResult d = dim_formula(v, vhat);
      o.require((d.regime == Regime::Empty) == (v < vhat / (1 - vhat)), "grid point " + v.get_str() + "," + vhat.get_str());
    }
  }
  constexpr std::size_t kHorizon = 1000;
  auto check = [&](const ExponentEstimate& e, const std::string& what) {
    if (std::isinf(e.vhat_tail)) return;
    o.require(e.vhat_tail <= e.v_tail / (1 + e.v_tail) + 0.05, what);
  };
  std::size_t constructed = 0;
  struct SpecCase {
    Rational v, vhat;
    std::size_t N;
    const char* beta;
    const char* x0;
  };
  const std::vector<SpecCase> cases = {{2, Rational(1, 2), 6, "2", "1/3"},
                                       {3, Rational(1, 3), 4, "2", "1/5"},
                                       {Rational(3, 2), Rational(2, 5), 5, "2", "2/7"},
                                       {1, Rational(1, 2), 3, "root:[-1,-1,1]@[1,2]", "1/3"},
                                       {4, Rational(3, 4), 4, "5/2", "1/3"}};
  for (const auto& c : cases) {
    CantorParams p;
    p.v = c.v;
    p.vhat = c.vhat;
    p.N = c.N;
    p.beta = c.beta;
    p.x0 = c.x0;
    p.seed = 5;
    CantorSpec spec(p);
    DigitWord w = construct_point(spec, spec.required_depth(kHorizon));
    const ExponentEstimate e = estimate_exponents(spec.bp(), w, spec.x0(), kHorizon);
    check(e, "constructed point v=" + c.v.get_str() + " vhat=" + c.vhat.get_str() + " (v_tail " +
                 std::to_string(e.v_tail) + ", vhat_tail " + std::to_string(e.vhat_tail) + ")");
    ++constructed;
  }
  std::mt19937_64 rng(9);
  BetaParam two = BetaParam::from_literal("2");
  for (int i = 0; i < 100; ++i) {
    Rational x = random_dyadic(rng, 2048);
    check(estimate_exponents(two, make_point(two, FieldElement(x)), make_point(two, "1/3"), kHorizon),
          "random point");
  }
  o.detail << "2500 grid points, " << constructed << " constructed + 100 random points";
}

void max_identity(Outcome& o) {
  double worst = 0;
  for (int i = 1; i <= 99; ++i) {
    const double vhat = i / 100.0;
    worst = std::max(worst, std::abs(dim_formula_max_over_v(vhat).value - dim_hat_formula(vhat)));
  }
  o.require(worst < 1e-6, "max deviation");
  o.require(dim_hat_formula(Rational(0)) == 1, "dim_hat(0)");
  o.require(dim_hat_formula(Rational(1)) == 0, "dim_hat(1)");
  o.detail << "max deviation " << worst;
}

void parameter_space(Outcome& o) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    oracle::Word w = oracle::random_self_admissible(rng, 12, 3);
    const DigitWord dw = to_word(w);
    BetaParam bp = solve_beta_from_self_admissible(dw);
    o.require(bp.d1_prefix(w.size() + 4) == dw + DigitWord{0, 0, 0, 0}, "round trip of " + dw.to_string());
  }
  BetaParam phi = BetaParam::from_literal("root:[-1,-1,1]@[1,2]");
  ExponentEstimate e = parameter_exponents(phi, make_point(phi, "0"), 50);
  o.require(e.exact_hit == 2u, "exact hit at step 2");
  o.require(std::isinf(e.vhat_tail), "infinite sentinel");
  o.detail << "100 words, phi orbit of 1 hits 0 at n=" << (e.exact_hit ? std::to_string(*e.exact_hit) : "-");
}

void lebesgue_sampling(Outcome& o) {
  std::mt19937_64 rng(12);
  BetaParam two = BetaParam::from_literal("2");
  Real x0 = make_point(two, "1/3");
  int small = 0;
  for (int i = 0; i < 200; ++i) {
    Rational x = random_dyadic(rng, 4096);
    if (estimate_exponents(two, make_point(two, FieldElement(x)), x0, 2000).vhat_tail < 0.05) ++small;
  }
  o.require(small >= 190, "fewer than 95% below 0.05");
  o.detail << small << "/200 below 0.05";
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;  // 0 when the criterion sets no runtime bound
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "admissible-word counts", 5, counts},
      {2, "enumeration oracle", 30, enumeration},
      {3, "fullness", 0, fullness},
      {4, "cylinder bounds for beta_N words", 60, lemma_bounds},
      {5, "beta_N chain", 0, beta_n_chain},
      {6, "exponent realization", 300, exponent_realization},
      {7, "local dimension", 120, local_dimension},
      {8, "measure axioms", 0, measure_axioms},
      {9, "regime guard", 0, regime_guard},
      {10, "max over v identity", 0, max_identity},
      {11, "parameter space", 0, parameter_space},
      {12, "almost every point", 0, lebesgue_sampling},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const Error& e) {
      o.pass = false;
      o.detail << e.name() << ": " << e.what();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail << " over the " << c.limit_seconds << " s limit";
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %-34s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
