#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's expansion, admissibility or counting code.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Word = std::vector<int>;

inline constexpr mp_bitcnt_t kBits = 512;

// Bisection for a root of sum c[i] z^i in [lo, hi] with a sign change.
inline mpf_class root(const std::vector<long>& c, double lo_d, double hi_d) {
  auto eval = [&](const mpf_class& z) {
    mpf_class acc(0, kBits);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  mpf_class lo(lo_d, kBits), hi(hi_d, kBits);
  const int slo = sgn(eval(lo));
  for (int i = 0; i < 480; ++i) {
    mpf_class mid(0, kBits);
    mid = (lo + hi) / 2;
    if (sgn(eval(mid)) == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

inline mpf_class from_q(const mpq_class& q) {
  mpf_class f(0, kBits);
  f = q;
  return f;
}

inline long floor_f(const mpf_class& x) {
  mpf_class f(0, kBits);
  mpf_floor(f.get_mpf_t(), x.get_mpf_t());
  return f.get_si();
}

// Greedy digits with exact rationals.
inline Word greedy_q(const mpq_class& beta, mpq_class x, std::size_t n) {
  Word w;
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class y = beta * x;
    mpz_class d;
    mpz_fdiv_q(d.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    w.push_back(static_cast<int>(d.get_si()));
    x = y - d;
  }
  return w;
}

// Greedy digits in 512-bit floating point; fine away from cylinder ends.
inline Word greedy_f(const mpf_class& beta, mpf_class x, std::size_t n) {
  Word w;
  for (std::size_t i = 0; i < n; ++i) {
    mpf_class y(0, kBits);
    y = beta * x;
    const long d = floor_f(y);
    w.push_back(static_cast<int>(d));
    x = y - d;
  }
  return w;
}

// Quasi-greedy expansion of 1: the largest digit keeping the partial sum
// strictly below 1 (ties within 2^-400 count as reaching 1).
inline Word quasi_greedy_one(const mpf_class& beta, std::size_t n) {
  Word w;
  mpf_class sum(0, kBits), scale(1, kBits), eps(0, kBits);
  mpf_div_2exp(eps.get_mpf_t(), mpf_class(1, kBits).get_mpf_t(), 400);
  const long top = floor_f(beta);
  for (std::size_t i = 0; i < n; ++i) {
    scale /= beta;
    int d = static_cast<int>(top);
    for (; d >= 0; --d) {
      mpf_class trial(0, kBits);
      trial = sum + d * scale;
      if (trial < 1 - eps) break;
    }
    if (d < 0) d = 0;
    w.push_back(d);
    sum += d * scale;
  }
  return w;
}

// sigma^k(w) <=lex eps for every k, comparing only the overlap.
inline bool admissible(const Word& w, const Word& eps) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (std::size_t i = 0; k + i < w.size(); ++i) {
      if (w[k + i] < eps.at(i)) break;
      if (w[k + i] > eps.at(i)) return false;
    }
  }
  return true;
}

// Self-admissibility via the zero-padded infinite words.
inline bool self_admissible(const Word& w) {
  Word pad = w;
  pad.resize(3 * w.size(), 0);
  for (std::size_t k = 1; k < w.size(); ++k) {
    Word shifted(pad.begin() + static_cast<std::ptrdiff_t>(k), pad.end());
    shifted.resize(pad.size(), 0);
    if (std::lexicographical_compare(pad.begin(), pad.end(), shifted.begin(), shifted.end())) {
      return false;
    }
  }
  return true;
}

inline std::vector<Word> all_words(int top, std::size_t n) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const auto& w : out) {
      for (int d = 0; d <= top; ++d) {
        Word v = w;
        v.push_back(d);
        next.push_back(v);
      }
    }
    out = std::move(next);
  }
  return out;
}

inline mpz_class fibonacci(unsigned n) {
  mpz_class a = 0, b = 1;
  for (unsigned i = 0; i < n; ++i) {
    mpz_class t = a + b;
    a = b;
    b = t;
  }
  return a;
}

// -log_beta |T^n x - x0| for n = 1..horizon with exact rationals (x0 rational).
inline std::vector<double> dist_log_q(const mpq_class& beta, mpq_class x, const mpq_class& x0,
                                      std::size_t horizon) {
  std::vector<double> out;
  const double lb = std::log2(beta.get_d());
  for (std::size_t n = 1; n <= horizon; ++n) {
    mpq_class y = beta * x;
    mpz_class d;
    mpz_fdiv_q(d.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    x = y - d;
    mpq_class g = abs(x - x0);
    if (g == 0) {
      out.push_back(INFINITY);
      break;
    }
    long e_num = 0, e_den = 0;
    const double fn = mpz_get_d_2exp(&e_num, g.get_num_mpz_t());
    const double fd = mpz_get_d_2exp(&e_den, g.get_den_mpz_t());
    const double l2 = std::log2(fn / fd) + static_cast<double>(e_num - e_den);
    out.push_back(-l2 / lb);
  }
  return out;
}

// Random self-admissible word with nonzero last digit, by rejection.
template <typename Rng>
Word random_self_admissible(Rng& rng, std::size_t max_len, int max_digit) {
  for (;;) {
    const std::size_t len = 1 + rng() % max_len;
    Word w(len);
    w[0] = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_digit));
    for (std::size_t i = 1; i < len; ++i) w[i] = static_cast<int>(rng() % static_cast<unsigned>(w[0] + 1));
    if (w.back() == 0) continue;
    if (len == 1 && w[0] == 1) continue;
    if (self_admissible(w)) return w;
  }
}

}  // namespace oracle
