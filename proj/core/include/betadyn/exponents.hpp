#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "betadyn/beta_core.hpp"

namespace betadyn {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A maximal block where the digits of x after position n agree with the
/// expansion of x0; m is the first position that disagrees.
struct RunRecord {
  std::size_t n = 0;
  std::size_t m = 0;
  /// The agreement runs to the end of the available digits of x.
  bool open_ended = false;

  friend bool operator==(const RunRecord& a, const RunRecord& b) {
    return a.n == b.n && a.m == b.m && a.open_ended == b.open_ended;
  }
};

struct EstimateOptions {
  /// Tails are taken over the last `window_fraction` of the horizon.
  double window_fraction = 1.0 / 3.0;
};

struct ExponentEstimate {
  std::size_t horizon = 0;
  double window_fraction = 1.0 / 3.0;
  /// First N of the tail window.
  std::size_t window_start = 0;
  /// dist_log[n-1] = D(n) = -log_beta |T^n x - x0|; +inf marks an exact hit.
  std::vector<double> dist_log;
  /// v_seq[N-1] = max_{n<=N} D(n)/n.
  std::vector<double> v_seq;
  /// vhat_seq[N-1] = max_{n<=N} D(n) / N.
  std::vector<double> vhat_seq;
  double v_tail = 0;
  double vhat_tail = 0;
  /// n with T^n x = x0 exactly, when found; the series stop there.
  std::optional<std::size_t> exact_hit;
  std::vector<RunRecord> runs;
};

/// |T^n x - x0| (n = 0 allowed).
Enclosure orbit_distance(const BetaParam& bp, const Real& x, const Real& x0, std::size_t n);

ExponentEstimate estimate_exponents(const BetaParam& bp, const Real& x, const Real& x0,
                                    std::size_t horizon, const EstimateOptions& opts = {});

/// x given by its (admissible) digits; x = evaluate(x_digits) and
/// T^n x = evaluate of the digits after position n. Needs horizon < size.
ExponentEstimate estimate_exponents(const BetaParam& bp, const DigitWord& x_digits,
                                    const Real& x0, std::size_t horizon,
                                    const EstimateOptions& opts = {});

/// Maximal agreement blocks followed by the extraction
/// i_{k+1} = min{ i > i_k : m'_i - n'_i > m_k - n_k }.
std::vector<RunRecord> run_decomposition(const DigitWord& x_digits, const DigitWord& x0_digits);
/// All maximal agreement blocks before extraction.
std::vector<RunRecord> maximal_runs(const DigitWord& x_digits, const DigitWord& x0_digits);

/// Longest common prefix of s[i..] with `pattern`, for every i.
std::vector<std::size_t> match_lengths(const std::vector<Digit>& s,
                                       const std::vector<Digit>& pattern);

}  // namespace betadyn
