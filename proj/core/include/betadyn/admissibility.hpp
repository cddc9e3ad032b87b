#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "betadyn/beta_core.hpp"

namespace betadyn {

enum class LexOrder { Less, EqualPrefix, Greater };
const char* to_string(LexOrder o);

LexOrder lex_compare(const DigitWord& a, const DigitWord& b);

/// Every shift of w is <=lex eps*(beta) (equal prefixes allowed).
bool is_admissible(const BetaParam& bp, const DigitWord& w);
/// Every shift of w is <=lex w itself (equal prefixes allowed).
bool is_self_admissible(const DigitWord& w);

/// Follower-state automaton of the beta-shift. State j means the longest
/// suffix read so far equals eps*_1..eps*_j. In state j a digit below
/// eps*_{j+1} returns to state 0, the digit eps*_{j+1} advances, and larger
/// digits are rejected. When eps* is periodic with period m the states are
/// taken mod m; otherwise eps* is truncated at `depth` and walking past it
/// throws DepthExceeded.
class FollowerAutomaton {
 public:
  static constexpr std::size_t kDefaultDepth = 64;

  explicit FollowerAutomaton(const BetaParam& bp, std::size_t depth = kDefaultDepth);
  /// Automaton of the base whose (finite) expansion of 1 is `d1`.
  static FollowerAutomaton from_expansion_of_one(const DigitWord& d1);

  Digit alphabet_top() const { return eps_.front(); }
  std::size_t depth() const { return period_ ? *period_ : eps_.size(); }
  std::optional<std::size_t> period() const { return period_; }
  std::size_t num_states() const { return period_ ? *period_ : eps_.size() + 1; }
  /// eps*_{state+1}.
  Digit expected(std::size_t state) const;
  /// Next state, or nullopt on rejection.
  std::optional<std::size_t> step(std::size_t state, Digit d) const;
  std::optional<std::size_t> run(const DigitWord& w, std::size_t state = 0) const;
  bool accepts(const DigitWord& w) const { return run(w).has_value(); }

  /// Number of admissible words of length n (from state 0).
  Integer count(std::size_t n) const;
  /// Number of length-n continuations accepted from `state`.
  Integer completions(std::size_t state, std::size_t n) const;

 private:
  FollowerAutomaton(std::vector<Digit> eps, std::optional<std::size_t> period);
  void ensure_counts(std::size_t n) const;
  std::size_t wrap(std::size_t s) const { return period_ && s == *period_ ? 0 : s; }

  std::vector<Digit> eps_;
  std::optional<std::size_t> period_;
  struct Cache {
    std::mutex mutex;
    std::vector<Integer> c0;  // c0[k] = count(k)
  };
  std::shared_ptr<Cache> cache_;
};

/// log2 of count(n) and completions(s, r), for lengths where the exact
/// integers get large. Borrows the automaton.
class FollowerLogCounts {
 public:
  explicit FollowerLogCounts(const FollowerAutomaton& fa);
  double count(std::size_t n);
  double completions(std::size_t state, std::size_t r);

 private:
  void extend(std::size_t n);
  const FollowerAutomaton& fa_;
  std::vector<double> lc_;
};

/// Default enumeration cap (number of words).
inline constexpr std::size_t kEnumerationCap = 1u << 20;

std::vector<DigitWord> enumerate_words(const BetaParam& bp, std::size_t n,
                                       std::size_t cap = kEnumerationCap);
std::vector<DigitWord> enumerate_words(const FollowerAutomaton& fa, std::size_t n,
                                       std::size_t cap = kEnumerationCap);
Integer count_words(const BetaParam& bp, std::size_t n);

/// beta^n <= count <= beta^{n+1}/(beta-1), decided exactly.
struct CountBounds {
  double lower = 0;
  double upper = 0;
  bool lower_ok = false;
  bool upper_ok = false;
};
CountBounds count_bounds(const BetaParam& bp, std::size_t n, const Integer& count);

struct Cylinder {
  DigitWord word;
  FieldElement left;
  FieldElement length;
  bool is_full = false;
  std::size_t order = 0;
  /// Follower state after reading the word (matched eps* prefix length).
  std::size_t state = 0;

  Enclosure left_enclosure(const Rational& w = pow2(-64)) const { return left.enclosure(w); }
  Enclosure length_enclosure(const Rational& w = pow2(-64)) const { return length.enclosure(w); }
};

/// Follower state of w under beta with no depth limit; nullopt if w is not
/// admissible.
std::optional<std::size_t> follower_state(const BetaParam& bp, const DigitWord& w);
/// Follower state after each prefix: trace[i] is the state after i digits.
std::optional<std::vector<std::size_t>> follower_trace(const BetaParam& bp, const DigitWord& w);

/// Interval of points whose expansion starts with w. The length is
/// beta^{-n} T^j(1) with j the follower state of w (T^0(1) = 1), which is the
/// value of the maximal admissible continuation.
Cylinder cylinder(const BetaParam& bp, const DigitWord& w);
bool is_full(const BetaParam& bp, const DigitWord& w);

}  // namespace betadyn
