#include "betadyn/admissibility.hpp"

#include <algorithm>
#include <cmath>

#include "betadyn/errors.hpp"

namespace betadyn {

const char* to_string(LexOrder o) {
  switch (o) {
    case LexOrder::Less:
      return "LT";
    case LexOrder::EqualPrefix:
      return "EQ_PREFIX";
    case LexOrder::Greater:
      return "GT";
  }
  return "?";
}

LexOrder lex_compare(const DigitWord& a, const DigitWord& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return LexOrder::Less;
    if (a[i] > b[i]) return LexOrder::Greater;
  }
  return LexOrder::EqualPrefix;
}

namespace {

template <typename Visit>
bool walk_follower(const BetaParam& bp, const DigitWord& w, Visit&& visit) {
  std::size_t j = 0;
  for (Digit d : w) {
    if (d < 0) return false;
    Digit e = bp.eps_star(j + 1);
    if (d > e) return false;
    if (d < e) {
      j = 0;
    } else {
      ++j;
      if (auto m = bp.simple_parry_within(j); m && *m == j) j = 0;
    }
    visit(j);
  }
  return true;
}

}  // namespace

std::optional<std::size_t> follower_state(const BetaParam& bp, const DigitWord& w) {
  std::size_t last = 0;
  if (!walk_follower(bp, w, [&](std::size_t j) { last = j; })) return std::nullopt;
  return last;
}

std::optional<std::vector<std::size_t>> follower_trace(const BetaParam& bp, const DigitWord& w) {
  std::vector<std::size_t> trace;
  trace.reserve(w.size() + 1);
  trace.push_back(0);
  if (!walk_follower(bp, w, [&](std::size_t j) { trace.push_back(j); })) return std::nullopt;
  return trace;
}

bool is_admissible(const BetaParam& bp, const DigitWord& w) {
  return follower_state(bp, w).has_value();
}

bool is_self_admissible(const DigitWord& w) {
  if (w.empty()) throw DomainError("self-admissibility of the empty word");
  for (std::size_t k = 1; k < w.size(); ++k) {
    // Compare w[k..] against w without copying.
    for (std::size_t i = 0; k + i < w.size(); ++i) {
      if (w[k + i] < w[i]) break;
      if (w[k + i] > w[i]) return false;
    }
  }
  return true;
}

// -------------------------------------------------------- FollowerAutomaton

FollowerAutomaton::FollowerAutomaton(std::vector<Digit> eps, std::optional<std::size_t> period)
    : eps_(std::move(eps)), period_(period), cache_(std::make_shared<Cache>()) {
  if (eps_.empty()) throw DomainError("empty eps* prefix");
  cache_->c0.push_back(Integer(1));
}

FollowerAutomaton::FollowerAutomaton(const BetaParam& bp, std::size_t depth)
    : cache_(std::make_shared<Cache>()) {
  if (depth < 1) throw DomainError("automaton depth must be >= 1");
  if (auto m = bp.simple_parry_within(depth)) {
    period_ = *m;
    eps_ = eps_star_prefix(bp, *m).digits();
  } else {
    eps_ = eps_star_prefix(bp, depth).digits();
  }
  cache_->c0.push_back(Integer(1));
}

FollowerAutomaton FollowerAutomaton::from_expansion_of_one(const DigitWord& d1) {
  if (d1.empty() || d1[d1.size() - 1] <= 0) {
    throw InvalidPrefix("expansion of 1 must be nonempty with a nonzero last digit");
  }
  if (!is_self_admissible(d1)) throw NotSelfAdmissible("expansion of 1 is not self-admissible");
  std::vector<Digit> eps = d1.digits();
  eps.back() -= 1;
  if (eps.size() == 1 && eps[0] == 0) throw InvalidPrefix("expansion (1) describes beta = 1");
  const std::size_t m = eps.size();
  return FollowerAutomaton(std::move(eps), m);
}

Digit FollowerAutomaton::expected(std::size_t state) const {
  if (period_) return eps_[state % *period_];
  if (state >= eps_.size()) {
    throw DepthExceeded("follower automaton truncated at depth " + std::to_string(eps_.size()));
  }
  return eps_[state];
}

std::optional<std::size_t> FollowerAutomaton::step(std::size_t state, Digit d) const {
  if (d < 0) return std::nullopt;
  Digit e = expected(state);
  if (d < e) return 0;
  if (d > e) return std::nullopt;
  return wrap(state + 1);
}

std::optional<std::size_t> FollowerAutomaton::run(const DigitWord& w, std::size_t state) const {
  for (Digit d : w) {
    auto next = step(state, d);
    if (!next) return std::nullopt;
    state = *next;
  }
  return state;
}

void FollowerAutomaton::ensure_counts(std::size_t n) const {
  if (!period_ && n > eps_.size()) {
    throw DepthExceeded("word length " + std::to_string(n) + " exceeds automaton depth " +
                        std::to_string(eps_.size()));
  }
  std::lock_guard lock(cache_->mutex);
  auto& c = cache_->c0;
  while (c.size() <= n) {
    const std::size_t k = c.size();
    // Walk the all-match chain from state 0: leaving it at step i with a
    // smaller digit gives eps_i choices followed by a fresh start.
    const std::size_t chain = period_ ? std::min(k, *period_) : k;
    Integer total = (period_ && k >= *period_) ? c[k - *period_] : Integer(1);
    for (std::size_t i = 0; i < chain; ++i) {
      if (eps_[i] != 0) total += eps_[i] * c[k - 1 - i];
    }
    c.push_back(std::move(total));
  }
}

Integer FollowerAutomaton::count(std::size_t n) const {
  ensure_counts(n);
  std::lock_guard lock(cache_->mutex);
  return cache_->c0[n];
}

Integer FollowerAutomaton::completions(std::size_t state, std::size_t n) const {
  if (period_) state %= *period_;
  if (state == 0) return count(n);
  std::size_t to_wrap = 0;
  if (period_) {
    to_wrap = *period_ - state;
  } else if (state + n > eps_.size()) {
    throw DepthExceeded("completion query beyond automaton depth");
  }
  ensure_counts(n);
  std::lock_guard lock(cache_->mutex);
  const auto& c = cache_->c0;
  const std::size_t chain = period_ ? std::min(n, to_wrap) : n;
  Integer total = (period_ && n >= to_wrap) ? c[n - to_wrap] : Integer(1);
  for (std::size_t i = 0; i < chain; ++i) {
    Digit e = period_ ? eps_[(state + i) % *period_] : eps_[state + i];
    if (e != 0) total += e * c[n - 1 - i];
  }
  return total;
}

FollowerLogCounts::FollowerLogCounts(const FollowerAutomaton& fa) : fa_(fa) { lc_.push_back(0.0); }

double FollowerLogCounts::count(std::size_t n) {
  extend(n);
  return lc_[n];
}

double FollowerLogCounts::completions(std::size_t s, std::size_t r) {
  const auto period = fa_.period();
  if (period) s %= *period;
  if (s == 0) return count(r);
  extend(r);
  const double ref = lc_[r];
  long double total;
  std::size_t chain = r;
  if (period) {
    const std::size_t to_wrap = *period - s;
    chain = std::min(r, to_wrap);
    total = r >= to_wrap ? std::exp2l(lc_[r - to_wrap] - ref) : std::exp2l(-ref);
  } else {
    total = std::exp2l(-ref);
  }
  for (std::size_t i = 0; i < chain; ++i) {
    const Digit e = fa_.expected(s + i);
    if (e != 0) total += e * std::exp2l(lc_[r - 1 - i] - ref);
  }
  return ref + static_cast<double>(std::log2l(total));
}

void FollowerLogCounts::extend(std::size_t n) {
  const auto period = fa_.period();
  while (lc_.size() <= n) {
    const std::size_t k = lc_.size();
    const double ref = lc_[k - 1];
    const std::size_t chain = period ? std::min(k, *period) : k;
    long double total =
        (period && k >= *period) ? std::exp2l(lc_[k - *period] - ref) : std::exp2l(-ref);
    for (std::size_t i = 0; i < chain; ++i) {
      const Digit e = fa_.expected(i);
      if (e != 0) total += e * std::exp2l(lc_[k - 1 - i] - ref);
    }
    lc_.push_back(ref + static_cast<double>(std::log2l(total)));
  }
}

// --------------------------------------------------------------- Enumeration

std::vector<DigitWord> enumerate_words(const FollowerAutomaton& fa, std::size_t n,
                                       std::size_t cap) {
  Integer total = fa.count(n);
  if (total > cap) {
    throw CapExceeded(total.get_str() + " words of length " + std::to_string(n) +
                      " exceed the enumeration cap " + std::to_string(cap));
  }
  std::vector<DigitWord> out;
  out.reserve(total.get_ui());
  std::vector<Digit> word;
  word.reserve(n);
  auto rec = [&](auto&& self, std::size_t state) -> void {
    if (word.size() == n) {
      out.emplace_back(word);
      return;
    }
    for (Digit d = 0; d <= fa.alphabet_top(); ++d) {
      auto next = fa.step(state, d);
      if (!next) break;
      word.push_back(d);
      self(self, *next);
      word.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<DigitWord> enumerate_words(const BetaParam& bp, std::size_t n, std::size_t cap) {
  FollowerAutomaton fa(bp, std::max(n, FollowerAutomaton::kDefaultDepth));
  auto words = enumerate_words(fa, n, cap);
  for (auto& w : words) w = DigitWord(w.digits(), bp.alphabet_top());
  return words;
}

Integer count_words(const BetaParam& bp, std::size_t n) {
  return FollowerAutomaton(bp, std::max(n, FollowerAutomaton::kDefaultDepth)).count(n);
}

CountBounds count_bounds(const BetaParam& bp, std::size_t n, const Integer& count) {
  const FieldElement& beta = bp.beta();
  FieldElement lower = pow(beta, static_cast<long>(n));
  FieldElement c{Rational(count)};
  CountBounds b;
  b.lower_ok = lower <= c;
  b.upper_ok = c * (beta - FieldElement(1)) <= lower * beta;
  const double bd = bp.to_double();
  b.lower = std::pow(bd, static_cast<double>(n));
  b.upper = std::pow(bd, static_cast<double>(n + 1)) / (bd - 1.0);
  return b;
}

// ------------------------------------------------------------------ Cylinders

Cylinder cylinder(const BetaParam& bp, const DigitWord& w) {
  auto state = follower_state(bp, w);
  if (!state) throw NotAdmissible("word (" + w.to_string() + ") is not admissible");
  Cylinder c;
  c.word = w;
  c.order = w.size();
  c.state = *state;
  c.left = evaluate(bp, w);
  FieldElement scale = pow(bp.beta(), -static_cast<long>(w.size()));
  c.length = bp.t_power_one(*state) * scale;
  c.is_full = *state == 0;
  return c;
}

bool is_full(const BetaParam& bp, const DigitWord& w) {
  auto state = follower_state(bp, w);
  if (!state) throw NotAdmissible("word (" + w.to_string() + ") is not admissible");
  return *state == 0;
}

}  // namespace betadyn
