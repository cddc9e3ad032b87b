#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "betadyn/number_field.hpp"
#include "betadyn/numerics.hpp"

namespace betadyn {

using Digit = int;

/// A finite digit sequence. `alphabet_top`, when set, is the largest digit
/// allowed by the base the word was produced for.
class DigitWord {
 public:
  DigitWord() = default;
  DigitWord(std::initializer_list<Digit> digits) : d_(digits) {}
  explicit DigitWord(std::vector<Digit> digits, std::optional<Digit> alphabet_top = std::nullopt);

  std::size_t size() const { return d_.size(); }
  bool empty() const { return d_.empty(); }
  /// 0-based.
  Digit operator[](std::size_t i) const { return d_[i]; }
  const std::vector<Digit>& digits() const { return d_; }
  std::vector<Digit>::const_iterator begin() const { return d_.begin(); }
  std::vector<Digit>::const_iterator end() const { return d_.end(); }
  std::optional<Digit> alphabet_top() const { return top_; }

  void push_back(Digit d);
  void append(const DigitWord& w);
  DigitWord prefix(std::size_t n) const;
  /// Digits from 0-based position `from` to the end.
  DigitWord drop(std::size_t from) const;
  DigitWord slice(std::size_t from, std::size_t count) const;

  /// "1 0 1"
  std::string to_string() const;
  static DigitWord parse(std::string_view text);

  friend DigitWord operator+(const DigitWord& a, const DigitWord& b);
  friend bool operator==(const DigitWord& a, const DigitWord& b) { return a.d_ == b.d_; }

 private:
  std::vector<Digit> d_;
  std::optional<Digit> top_;
};

/// Lazily produced digit sequence with a memoized, thread-safe prefix.
class DigitStream {
 public:
  /// Called with indices 0, 1, 2, ... in order, each exactly once.
  using Producer = std::function<Digit(std::size_t index)>;

  explicit DigitStream(Producer producer);

  /// 0-based digit.
  Digit at(std::size_t i) const;
  DigitWord prefix(std::size_t n) const;

 private:
  struct State {
    std::mutex mutex;
    Producer producer;
    std::vector<Digit> memo;
  };
  std::shared_ptr<State> state_;
};

class BetaParam {
 public:
  explicit BetaParam(const FieldElement& beta, std::string literal = {});
  static BetaParam from_literal(std::string_view literal);

  const FieldElement& beta() const;
  Enclosure beta_enclosure(const Rational& width = pow2(-64)) const;
  /// The parsed literal, or a generated one.
  const std::string& literal() const;
  Digit alphabet_top() const;
  bool is_integer() const;
  double log2_beta() const;
  double to_double() const;

  /// T^j(1) with T^0(1) = 1 and T(1) = beta - floor(beta).
  FieldElement t_power_one(std::size_t j) const;
  /// 1-based digit of d_beta(1); zero after a terminating expansion.
  Digit d1(std::size_t i) const;
  DigitWord d1_prefix(std::size_t n) const;
  /// 1-based digit of eps*(beta).
  Digit eps_star(std::size_t i) const;
  /// Smallest m <= horizon with T^m(1) = 0.
  std::optional<std::size_t> simple_parry_within(std::size_t horizon) const;

  const DigitStream& d1_stream() const;
  const DigitStream& eps_star_stream() const;

  /// Same base (identity of the shared state).
  bool same_as(const BetaParam& other) const { return impl_ == other.impl_; }

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

/// A point of [0,1]: exact when it lives in the field of beta (or is
/// rational), otherwise an enclosure with a refiner.
using Real = std::variant<FieldElement, Enclosure>;

Real make_point(const BetaParam& bp, std::string_view literal);
Real make_point(const BetaParam& bp, const FieldElement& x);
Enclosure enclose(const Real& x, const Rational& width = pow2(-64));
bool is_exact(const Real& x);

FieldElement t_beta_step(const BetaParam& bp, const FieldElement& x);
Enclosure t_beta_step(const BetaParam& bp, const Enclosure& x);
Real t_beta_step(const BetaParam& bp, const Real& x);

/// Iterates T_beta on a point and records the greedy digits.
class Orbit {
 public:
  Orbit(BetaParam bp, Real x);

  std::size_t index() const { return n_; }
  /// Emits eps_{n+1} = floor(beta T^n x) and advances to T^{n+1} x.
  Digit step();
  bool exact() const { return exact_.has_value(); }
  /// T^n x; requires exact().
  const FieldElement& exact_value() const { return *exact_; }
  /// Enclosure of T^n x of width <= `width`.
  Enclosure value(const Rational& width) const;
  const DigitWord& digits() const { return digits_; }

 private:
  Enclosure opaque_value(long bits) const;

  BetaParam bp_;
  std::optional<FieldElement> exact_;
  Enclosure start_;
  std::size_t n_ = 0;
  DigitWord digits_;
};

/// First n greedy digits of x in [0,1]; x = 1 gives d_beta(1).
DigitWord expand(const BetaParam& bp, const Real& x, std::size_t n);
DigitWord expand_one(const BetaParam& bp, std::size_t n);
/// sum w_i beta^{-i}, exact.
FieldElement evaluate(const BetaParam& bp, const DigitWord& w);
DigitWord eps_star_prefix(const BetaParam& bp, std::size_t n);
std::optional<std::size_t> is_simple_parry_within(const BetaParam& bp, std::size_t horizon);

/// The unique z > 1 with 1 = sum_{i<=N} prefix_i z^{-i}, as an exact
/// algebraic number.
FieldElement solve_beta_n_exact(const DigitWord& prefix, std::size_t N);
Enclosure solve_beta_n(const DigitWord& prefix, std::size_t N, const Rational& width = pow2(-128));
/// BetaParam for beta_N built from the first N digits of eps*(beta).
BetaParam beta_n_param(const BetaParam& bp, std::size_t N);

struct DigitFile {
  std::string beta_literal;
  Digit alphabet_top = 0;
  DigitWord word;
};

void write_digit_file(std::ostream& out, const BetaParam& bp, const DigitWord& w);
DigitFile read_digit_file(std::istream& in);

}  // namespace betadyn
