#pragma once

// Lower-bound Cantor construction: approximation schedule, digit assembly
// with 0^N 1 0^N markers and copied blocks of d_beta(x0), free blocks drawn
// from the beta_N shift, and the associated measure.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "betadyn/admissibility.hpp"
#include "betadyn/beta_core.hpp"

namespace betadyn {

struct ScheduleEntry {
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  /// max{t : m + t(m - n) < n_{k+1}}; unknown for the last listed entry.
  std::optional<std::size_t> t;

  friend bool operator==(const ScheduleEntry& a, const ScheduleEntry& b) {
    return a.k == b.k && a.n == b.n && a.m == b.m && a.t == b.t;
  }
};

/// Adjusted schedule from n'_k = floor((v/vhat)^k), m'_k = floor((1+v) n'_k).
/// Entries with m' <= n' are skipped. When the previous m reaches the next
/// n', the previous m is lowered to n' - 1 if the gaps stay non-decreasing,
/// otherwise the new entry is dropped.
std::vector<ScheduleEntry> build_schedule(const Rational& v, const Rational& vhat,
                                          std::size_t k_max);

/// Offsets of the k-th block in the assembled word (1-based positions):
/// the k-th opening marker starts at l, the closing marker ends at h, and
/// the repeated markers end at q.
struct Placement {
  std::size_t k = 0, n = 0, m = 0, t = 0;
  std::size_t l = 0, h = 0, p = 0, q = 0;
};

enum class FillPolicy { Random, Zeros };
enum class SegmentKind { Free, Marker, Copy };
const char* to_string(SegmentKind kind);

struct Segment {
  SegmentKind kind = SegmentKind::Free;
  /// 1-based first position.
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t k = 0;
  std::size_t end() const { return start + length - 1; }
};

struct CantorParams {
  Rational v;
  Rational vhat;
  std::size_t N = 1;
  std::string beta = "2";
  std::string x0 = "0";
  std::uint64_t seed = 0;
  std::size_t k_max = 8;
  FillPolicy fill = FillPolicy::Random;
};

class CantorSpec {
 public:
  explicit CantorSpec(const CantorParams& params);
  CantorSpec(const BetaParam& bp, const Real& x0, const Rational& v, const Rational& vhat,
             std::size_t N, std::uint64_t seed = 0, FillPolicy fill = FillPolicy::Random,
             std::size_t k_max = 8);

  const Rational& v() const;
  const Rational& vhat() const;
  std::size_t N() const;
  std::uint64_t seed() const;
  FillPolicy fill() const;
  std::size_t k_max() const;
  const BetaParam& bp() const;
  const BetaParam& beta_n() const;
  const FollowerAutomaton& beta_n_automaton() const;
  const Real& x0() const;
  /// 1-based digit of d_beta(x0).
  Digit x0_digit(std::size_t i) const;
  DigitWord x0_prefix(std::size_t n) const;

  /// 1-based; extends the schedule as needed.
  ScheduleEntry entry(std::size_t k) const;
  Placement placement(std::size_t k) const;
  /// Segments covering positions 1..depth (the last may run past depth).
  std::vector<Segment> segments_until(std::size_t depth) const;
  /// Word length needed so that every orbit point T^n x with n <= horizon
  /// sees the complete copied block it falls into, plus a margin.
  std::size_t required_depth(std::size_t horizon) const;

 private:
  struct State;
  std::shared_ptr<State> s_;
};

struct Construction {
  DigitWord word;
  std::vector<Segment> segments;
  /// One line per free block where the match guard intervened.
  std::vector<std::string> guard_log;
};

/// The first `depth` digits of the constructed point. Throws DepthTooSmall
/// when depth < l_2, VerificationFailed if the result is not admissible.
Construction construct(const CantorSpec& spec, std::size_t depth);
DigitWord construct_point(const CantorSpec& spec, std::size_t depth);

/// mu(I_n(w)) for the first n digits of `prefix`. Determined digits carry
/// the mass unchanged; inside a free block of length L with j digits read
/// (follower state s under beta_N) the block contributes
/// completions(s, L - j) / #Sigma^L. Returns 0 off the support at a free
/// position; throws InconsistentPrefix at a determined position.
Rational mu_mass(const CantorSpec& spec, std::size_t n, const DigitWord& prefix);

/// Word-independent value 1/#Sigma^{j} for a partial free block with j
/// digits read, times 1/#Sigma^L for each completed free block.
Rational mu_table_value(const CantorSpec& spec, std::size_t n);

struct LocalDimPoint {
  std::size_t k = 0;
  std::size_t h = 0;
  double neg_log2_mu = 0;
  double neg_log2_length = 0;
  double ratio = 0;
};

/// ratio_k = log mu(I_{h_k}) / log |I_{h_k}| for k = 1..k_max.
std::vector<LocalDimPoint> local_dimension_series(const CantorSpec& spec, std::size_t k_max);

/// -log2 mu(I_n) / -log2 |I_n| along a constructed word, for each listed n.
std::vector<double> local_ratio_profile(const CantorSpec& spec, const DigitWord& word,
                                        const std::vector<std::size_t>& positions);

}  // namespace betadyn
