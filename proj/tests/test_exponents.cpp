#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "betadyn/beta_core.hpp"
#include "betadyn/errors.hpp"
#include "betadyn/exponents.hpp"

using namespace betadyn;

namespace {

BetaParam two() { return BetaParam::from_literal("2"); }
BetaParam golden() { return BetaParam::from_literal("root:[-1,-1,1]@[1,2]"); }

Rational random_rational(std::mt19937_64& rng, unsigned bits) {
  Integer num = 0;
  for (unsigned i = 0; i < bits; i += 32) num = num * (Integer(1) << 32) + Integer(static_cast<unsigned long>(rng() & 0xffffffffu));
  Rational x(num, Integer(1) << bits);
  x.canonicalize();
  return x;
}

}  // namespace

TEST_CASE("orbit_distance") {
  BetaParam b2 = two();
  Enclosure d0 = orbit_distance(b2, make_point(b2, "5/16"), make_point(b2, "1/3"), 0);
  CHECK(d0.contains(Rational(1, 48)));
  CHECK(d0.is_point());
  Enclosure d2 = orbit_distance(b2, make_point(b2, "1/3"), make_point(b2, "1/3"), 2);
  CHECK(d2.is_point());
  CHECK(d2.lo() == 0);

  BetaParam phi = golden();
  Real x = make_point(phi, phi.beta() - FieldElement(1));
  Enclosure dp = orbit_distance(phi, x, make_point(phi, "0"), 2);
  CHECK(dp.lo() == 0);
  CHECK(dp.hi() == 0);
}

TEST_CASE("distance series matches the exact rational orbit") {
  std::mt19937_64 rng(17);
  for (auto [num, den] : {std::pair{2, 1}, {3, 2}, {5, 2}}) {
    BetaParam bp = BetaParam::from_literal(std::to_string(num) + "/" + std::to_string(den));
    mpq_class beta(num, den);
    beta.canonicalize();
    for (int i = 0; i < 5; ++i) {
      Rational x = random_rational(rng, 96);
      const Rational x0(1, 3);
      auto expected = oracle::dist_log_q(beta, x, x0, 150);
      ExponentEstimate est = estimate_exponents(bp, make_point(bp, FieldElement(x)),
                                                make_point(bp, FieldElement(x0)), 150);
      REQUIRE(est.dist_log.size() == expected.size());
      for (std::size_t n = 0; n < expected.size(); ++n) {
        CHECK(est.dist_log[n] == doctest::Approx(expected[n]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("digit-word path agrees with the point path") {
  std::mt19937_64 rng(23);
  for (const char* lit : {"2", "5/2"}) {
    BetaParam bp = BetaParam::from_literal(lit);
    for (int i = 0; i < 4; ++i) {
      Rational x = random_rational(rng, 2048);
      Real px = make_point(bp, FieldElement(x));
      Real x0 = make_point(bp, "1/3");
      DigitWord digits = expand(bp, px, 1200);
      ExponentEstimate a = estimate_exponents(bp, px, x0, 300);
      ExponentEstimate b = estimate_exponents(bp, digits, x0, 300);
      REQUIRE(a.dist_log.size() == b.dist_log.size());
      for (std::size_t n = 0; n < a.dist_log.size(); ++n) {
        CHECK(b.dist_log[n] == doctest::Approx(a.dist_log[n]).epsilon(1e-6));
      }
      CHECK(b.v_tail == doctest::Approx(a.v_tail).epsilon(1e-6));
      CHECK(b.vhat_tail == doctest::Approx(a.vhat_tail).epsilon(1e-6));
    }
  }
}

TEST_CASE("series definitions and structural properties") {
  std::mt19937_64 rng(31);
  BetaParam bp = two();
  for (int i = 0; i < 20; ++i) {
    Rational x = random_rational(rng, 1024);
    EstimateOptions opts;
    opts.window_fraction = 0.5;
    ExponentEstimate est = estimate_exponents(bp, make_point(bp, FieldElement(x)),
                                              make_point(bp, "1/3"), 400, opts);
    REQUIRE(est.dist_log.size() == 400);
    double best = 0, best_ratio = 0;
    double vhat_min = kInfinity, v_max = 0;
    for (std::size_t N = 1; N <= 400; ++N) {
      best = std::max(best, est.dist_log[N - 1]);
      best_ratio = std::max(best_ratio, est.dist_log[N - 1] / static_cast<double>(N));
      CHECK(est.v_seq[N - 1] == doctest::Approx(best_ratio));
      CHECK(est.vhat_seq[N - 1] == doctest::Approx(best / static_cast<double>(N)));
      if (N > 1) CHECK(est.vhat_seq[N - 1] * N >= est.vhat_seq[N - 2] * (N - 1) - 1e-9);
      if (N >= est.window_start) {
        vhat_min = std::min(vhat_min, est.vhat_seq[N - 1]);
        v_max = std::max(v_max, est.dist_log[N - 1] / static_cast<double>(N));
      }
    }
    CHECK(est.window_start == 201);
    CHECK(est.vhat_tail == doctest::Approx(vhat_min));
    CHECK(est.v_tail == doctest::Approx(v_max));
    CHECK(est.vhat_tail >= 0);
    CHECK(est.vhat_tail <= est.v_tail / (1 + est.v_tail) + 0.05);
    CHECK(est.vhat_tail < 0.1);
  }
}

TEST_CASE("an eventually matching point is an exact hit") {
  BetaParam bp = two();
  // x = 0.11 followed by the binary digits of 1/3, i.e. T^2 x = 1/3.
  Rational x = Rational(3, 4) + Rational(1, 12);
  ExponentEstimate est = estimate_exponents(bp, make_point(bp, FieldElement(x)),
                                            make_point(bp, "1/3"), 50);
  REQUIRE(est.exact_hit.has_value());
  CHECK(*est.exact_hit == 2);
  CHECK(std::isinf(est.vhat_tail));
  CHECK(std::isinf(est.dist_log.back()));

  BetaParam phi = golden();
  ExponentEstimate ep = estimate_exponents(phi, make_point(phi, phi.beta() - FieldElement(1)),
                                           make_point(phi, "0"), 20);
  CHECK(ep.exact_hit == 1u);
}

TEST_CASE("match_lengths against a direct scan") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    std::vector<Digit> s(1 + rng() % 60), p(1 + rng() % 10);
    for (auto& d : s) d = static_cast<Digit>(rng() % 2);
    for (auto& d : p) d = static_cast<Digit>(rng() % 2);
    auto z = match_lengths(s, p);
    REQUIRE(z.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::size_t l = 0;
      while (i + l < s.size() && l < p.size() && s[i + l] == p[l]) ++l;
      CHECK(z[i] == l);
    }
  }
}

TEST_CASE("run decomposition") {
  DigitWord x0{0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  DigitWord x{1, 0, 1, 0, 1, 1, 1, 1};
  auto runs = run_decomposition(x, x0);
  REQUIRE(!runs.empty());
  CHECK(runs.front() == RunRecord{1, 6, false});
  CHECK(run_decomposition(DigitWord{1, 1, 1, 1}, DigitWord{0, 0}).empty());

  // x = (w, digits of x0): the final run is open-ended.
  DigitWord w{1, 1, 0};
  DigitWord tail = w + x0;
  auto open = run_decomposition(tail, x0);
  REQUIRE(!open.empty());
  CHECK(open.back().open_ended);
  CHECK(open.back().n == 3);
}

TEST_CASE("run extraction keeps strictly growing gaps") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 100; ++t) {
    DigitWord x, x0;
    for (int i = 0; i < 200; ++i) x.push_back(static_cast<Digit>(rng() % 2));
    for (int i = 0; i < 200; ++i) x0.push_back(static_cast<Digit>(rng() % 2));
    auto all = maximal_runs(x, x0);
    auto runs = run_decomposition(x, x0);
    // Oracle for the extraction rule.
    std::vector<RunRecord> expected;
    for (const auto& r : all) {
      if (expected.empty() || r.m - r.n > expected.back().m - expected.back().n) expected.push_back(r);
    }
    CHECK(runs == expected);
    for (const auto& r : all) {
      CHECK(r.n < r.m);
      // Digits after n agree with x0 for m - n - 1 places, then differ.
      for (std::size_t i = 0; i + 1 < r.m - r.n; ++i) CHECK(x[r.n + i] == x0[i]);
      if (!r.open_ended) CHECK(x[r.m - 1] != x0[r.m - r.n - 1]);
    }
  }
}

TEST_CASE("distance is below beta^{n-m+1} at run starts") {
  // The lower half of the sandwich needs the boundary digits of the
  // construction; for arbitrary points only the upper bound holds.
  std::mt19937_64 rng(47);
  BetaParam bp = two();
  for (int t = 0; t < 10; ++t) {
    Rational x = random_rational(rng, 512);
    Real px = make_point(bp, FieldElement(x));
    Real x0 = make_point(bp, "1/3");
    DigitWord xd = expand(bp, px, 400);
    DigitWord x0d = expand(bp, x0, 400);
    for (const auto& r : maximal_runs(xd, x0d)) {
      if (r.open_ended) continue;
      Enclosure d = orbit_distance(bp, px, x0, r.n);
      CHECK(d.hi() < pow2(static_cast<long>(r.n) - static_cast<long>(r.m) + 1));
    }
  }
}

TEST_CASE("horizon and admissibility checks") {
  BetaParam phi = golden();
  CHECK_THROWS_AS(estimate_exponents(phi, DigitWord{1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, make_point(phi, "0"), 10),
                  NotAdmissible);
  CHECK_THROWS_AS(estimate_exponents(phi, make_point(phi, "1/2"), make_point(phi, "0"), 9),
                  DomainError);
  CHECK_THROWS_AS(estimate_exponents(phi, DigitWord{1, 0, 0}, make_point(phi, "0"), 10),
                  DepthTooSmall);
}
