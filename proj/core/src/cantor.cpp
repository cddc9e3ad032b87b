#include "betadyn/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>

#include "betadyn/errors.hpp"
#include "betadyn/exponents.hpp"

namespace betadyn {

namespace {

constexpr std::size_t kPositionLimit = std::size_t(1) << 50;
constexpr int kGuardResamples = 16;

void check_regime(const Rational& v, const Rational& vhat) {
  if (!(v > 0)) throw DomainError("v must be positive");
  if (!(vhat > 0 && vhat < 1)) throw DomainError("vhat must lie in (0,1)");
  if (v * (1 - vhat) < vhat) throw EmptyRegime("v(1 - vhat) < vhat: no such points");
}

// Accepted (n, m) pairs; every entry but the last is final.
class ScheduleBuilder {
 public:
  ScheduleBuilder(const Rational& v, const Rational& vhat)
      : ratio_(v / vhat), growth_(1 + v), power_(1) {
    check_regime(v, vhat);
  }

  void ensure(std::size_t count) {
    while (accepted_.size() < count) {
      if (++candidates_ > 100000) throw DomainError("approximation schedule does not progress");
      power_ *= ratio_;
      Integer n = floor_of(power_);
      Integer m = floor_of(growth_ * Rational(n));
      if (m > Integer(static_cast<unsigned long>(kPositionLimit))) {
        throw DomainError("approximation schedule exceeds the position limit");
      }
      offer(n.get_ui(), m.get_ui());
    }
  }

  const std::vector<std::pair<std::size_t, std::size_t>>& accepted() const { return accepted_; }

 private:
  void offer(std::size_t n, std::size_t m) {
    if (m <= n) return;
    if (accepted_.empty()) {
      accepted_.emplace_back(n, m);
      return;
    }
    auto& prev = accepted_.back();
    if (n <= prev.first) return;
    const std::size_t before =
        accepted_.size() >= 2 ? accepted_[accepted_.size() - 2].second -
                                    accepted_[accepted_.size() - 2].first
                              : 0;
    if (prev.second >= n) {
      const std::size_t clamped = n - 1;
      if (clamped <= prev.first) return;
      const std::size_t gap = clamped - prev.first;
      if (gap < before || m - n < gap) return;
      prev.second = clamped;
    } else if (m - n < prev.second - prev.first) {
      return;
    }
    accepted_.emplace_back(n, m);
  }

  Rational ratio_, growth_, power_;
  std::size_t candidates_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> accepted_;
};

std::size_t gap_repeats(std::size_t n, std::size_t m, std::size_t next_n) {
  // max{t : m + t(m - n) < next_n}
  return (next_n - 1 - m) / (m - n);
}

bool is_one(const Real& x) {
  const auto* f = std::get_if<FieldElement>(&x);
  return f && *f == FieldElement(1);
}

DigitStream x0_stream(const BetaParam& bp, const Real& x0) {
  if (is_one(x0)) return DigitStream([bp](std::size_t i) { return bp.d1(i + 1); });
  auto orbit = std::make_shared<Orbit>(bp, x0);
  return DigitStream([orbit](std::size_t) { return orbit->step(); });
}

}  // namespace

const char* to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::Free:
      return "free";
    case SegmentKind::Marker:
      return "marker";
    case SegmentKind::Copy:
      return "copy";
  }
  return "?";
}

std::vector<ScheduleEntry> build_schedule(const Rational& v, const Rational& vhat,
                                          std::size_t k_max) {
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  ScheduleBuilder b(v, vhat);
  b.ensure(k_max + 1);
  const auto& acc = b.accepted();
  std::vector<ScheduleEntry> out;
  for (std::size_t i = 0; i < k_max; ++i) {
    ScheduleEntry e{i + 1, acc[i].first, acc[i].second, std::nullopt};
    if (i + 1 < k_max) e.t = gap_repeats(e.n, e.m, acc[i + 1].first);
    out.push_back(e);
  }
  return out;
}

// ------------------------------------------------------------------ CantorSpec

struct CantorSpec::State {
  State(const BetaParam& bp_, const Real& x0_, const Rational& v_, const Rational& vhat_,
        std::size_t N_, std::uint64_t seed_, FillPolicy fill_, std::size_t k_max_,
        const DigitWord& prefix)
      : v(v_),
        vhat(vhat_),
        N(N_),
        seed(seed_),
        fill(fill_),
        k_max(k_max_),
        bp(bp_),
        bpN(solve_beta_n_exact(prefix, N_)),
        fa(FollowerAutomaton::from_expansion_of_one(prefix)),
        x0(x0_),
        x0s(x0_stream(bp_, x0_)),
        schedule(v_, vhat_) {}

  Rational v, vhat;
  std::size_t N;
  std::uint64_t seed;
  FillPolicy fill;
  std::size_t k_max;
  BetaParam bp;
  BetaParam bpN;
  FollowerAutomaton fa;
  Real x0;
  DigitStream x0s;
  std::mutex mutex;
  ScheduleBuilder schedule;
};

CantorSpec::CantorSpec(const CantorParams& p) {
  BetaParam bp = BetaParam::from_literal(p.beta);
  *this = CantorSpec(bp, make_point(bp, p.x0), p.v, p.vhat, p.N, p.seed, p.fill, p.k_max);
}

CantorSpec::CantorSpec(const BetaParam& bp, const Real& x0, const Rational& v,
                       const Rational& vhat, std::size_t N, std::uint64_t seed, FillPolicy fill,
                       std::size_t k_max) {
  if (N < 1) throw DomainError("N must be >= 1");
  if (k_max < 2) throw DomainError("k_max must be >= 2");
  check_regime(v, vhat);
  const Enclosure e = enclose(x0);
  if (e.hi() < 0 || e.lo() > 1) throw DomainError("x0 must lie in [0,1]");
  DigitWord prefix = eps_star_prefix(bp, N);
  s_ = std::make_shared<State>(bp, x0, v, vhat, N, seed, fill, k_max, prefix);
}

const Rational& CantorSpec::v() const { return s_->v; }
const Rational& CantorSpec::vhat() const { return s_->vhat; }
std::size_t CantorSpec::N() const { return s_->N; }
std::uint64_t CantorSpec::seed() const { return s_->seed; }
FillPolicy CantorSpec::fill() const { return s_->fill; }
std::size_t CantorSpec::k_max() const { return s_->k_max; }
const BetaParam& CantorSpec::bp() const { return s_->bp; }
const BetaParam& CantorSpec::beta_n() const { return s_->bpN; }
const FollowerAutomaton& CantorSpec::beta_n_automaton() const { return s_->fa; }
const Real& CantorSpec::x0() const { return s_->x0; }

Digit CantorSpec::x0_digit(std::size_t i) const {
  if (i < 1) throw DomainError("digit positions are 1-based");
  return s_->x0s.at(i - 1);
}

DigitWord CantorSpec::x0_prefix(std::size_t n) const {
  return DigitWord(s_->x0s.prefix(n).digits(), s_->bp.alphabet_top());
}

ScheduleEntry CantorSpec::entry(std::size_t k) const {
  if (k < 1) throw DomainError("schedule index is 1-based");
  std::lock_guard lock(s_->mutex);
  s_->schedule.ensure(k + 1);
  const auto& acc = s_->schedule.accepted();
  const auto [n, m] = acc[k - 1];
  return ScheduleEntry{k, n, m, gap_repeats(n, m, acc[k].first)};
}

Placement CantorSpec::placement(std::size_t k) const {
  const std::size_t N = s_->N;
  std::size_t repeats = 0;  // sum_{i<k} 2N t_i
  for (std::size_t i = 1; i < k; ++i) repeats += 2 * N * *entry(i).t;
  const ScheduleEntry e = entry(k);
  Placement p;
  p.k = k;
  p.n = e.n;
  p.m = e.m;
  p.t = *e.t;
  p.l = e.n + 4 * (k - 1) * N + repeats;
  p.h = e.m + 4 * k * N + repeats;
  p.p = e.m - e.n - 1;
  p.q = p.h + p.t * (e.m - e.n + 2 * N);
  return p;
}

std::vector<Segment> CantorSpec::segments_until(std::size_t depth) const {
  const std::size_t N = s_->N;
  std::vector<Segment> out;
  std::size_t pos = 1;
  auto add = [&](SegmentKind kind, std::size_t len, std::size_t k) {
    if (len == 0) return;
    out.push_back(Segment{kind, pos, len, k});
    pos += len;
  };
  Placement cur = placement(1);
  add(SegmentKind::Free, cur.l - 1, 0);
  for (std::size_t k = 1; pos <= depth; ++k) {
    add(SegmentKind::Marker, 2 * N + 1, k);
    add(SegmentKind::Copy, cur.p, k);
    add(SegmentKind::Marker, 2 * N + 1, k);
    for (std::size_t i = 0; i < cur.t; ++i) {
      add(SegmentKind::Free, cur.p, k);
      add(SegmentKind::Marker, 2 * N + 1, k);
    }
    Placement next = placement(k + 1);
    add(SegmentKind::Free, next.l - cur.q - 1, k);
    cur = next;
  }
  return out;
}

std::size_t CantorSpec::required_depth(std::size_t horizon) const {
  const std::size_t margin = 64 + 2 * s_->N + 1;
  std::size_t reach = horizon;
  for (std::size_t k = 1;; ++k) {
    Placement p = placement(k);
    if (p.l > horizon) break;
    reach = std::max(reach, p.h);
  }
  return std::max(reach + margin, placement(2).l);
}

// ---------------------------------------------------------------- Construction

namespace {

// How far past the following marker's 1 a match with x0 starting inside the
// block reaches (0 when it stops short of it).
std::size_t guard_overshoot(const std::vector<Digit>& block, std::size_t N,
                            const std::vector<Digit>& x0) {
  std::vector<Digit> text = block;
  text.insert(text.end(), N, 0);
  text.push_back(1);
  const auto z = match_lengths(text, x0);
  const std::size_t limit = block.size() + N;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i + z[i] > limit) worst = std::max(worst, i + z[i] - limit);
  }
  return worst;
}

std::vector<Digit> random_block(const FollowerAutomaton& fa, std::size_t len,
                                std::mt19937_64& rng) {
  std::vector<Digit> out;
  out.reserve(len);
  std::size_t state = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const Digit top = fa.expected(state);
    const Digit d = static_cast<Digit>(rng() % static_cast<std::uint64_t>(top + 1));
    out.push_back(d);
    state = *fa.step(state, d);
  }
  return out;
}

}  // namespace

Construction construct(const CantorSpec& spec, std::size_t depth) {
  if (depth < spec.placement(2).l) {
    throw DepthTooSmall("depth " + std::to_string(depth) + " is below l_2 = " +
                        std::to_string(spec.placement(2).l));
  }
  const std::size_t N = spec.N();
  const FollowerAutomaton& fa = spec.beta_n_automaton();
  Construction c;
  c.segments = spec.segments_until(depth);
  std::mt19937_64 rng(spec.seed());
  std::vector<Digit> word;
  word.reserve(c.segments.back().end());
  for (const Segment& seg : c.segments) {
    switch (seg.kind) {
      case SegmentKind::Marker:
        word.insert(word.end(), N, 0);
        word.push_back(1);
        word.insert(word.end(), N, 0);
        break;
      case SegmentKind::Copy: {
        const DigitWord copy = spec.x0_prefix(seg.length);
        word.insert(word.end(), copy.begin(), copy.end());
        break;
      }
      case SegmentKind::Free: {
        const std::vector<Digit> x0 = spec.x0_prefix(seg.length + N + 1).digits();
        const std::vector<Digit> zeros(seg.length, 0);
        std::vector<Digit> block;
        std::string note;
        if (spec.fill() == FillPolicy::Zeros) {
          block = zeros;
          if (guard_overshoot(block, N, x0) > 0) note = "zero block kept despite crossing";
        } else {
          block = random_block(fa, seg.length, rng);
          std::size_t over = guard_overshoot(block, N, x0);
          int tries = 0;
          std::vector<Digit> best = block;
          std::size_t best_over = over;
          while (over > 0 && tries < kGuardResamples) {
            ++tries;
            block = random_block(fa, seg.length, rng);
            over = guard_overshoot(block, N, x0);
            if (over < best_over) {
              best = block;
              best_over = over;
            }
          }
          if (tries > 0) {
            note = "resampled " + std::to_string(tries) + " time(s)";
            if (over > 0) {
              const std::size_t zero_over = guard_overshoot(zeros, N, x0);
              if (zero_over == 0 || zero_over < best_over) {
                block = zeros;
                note += ", fell back to zeros";
              } else {
                block = best;
                note += ", kept least overshoot " + std::to_string(best_over);
              }
            }
          }
        }
        if (!note.empty()) {
          c.guard_log.push_back("free block at " + std::to_string(seg.start) + " length " +
                                std::to_string(seg.length) + ": " + note);
        }
        word.insert(word.end(), block.begin(), block.end());
        break;
      }
    }
  }
  word.resize(depth);
  c.word = DigitWord(std::move(word), spec.bp().alphabet_top());
  if (!is_admissible(spec.bp(), c.word)) {
    throw VerificationFailed("constructed word is not admissible for beta");
  }
  return c;
}

DigitWord construct_point(const CantorSpec& spec, std::size_t depth) {
  return construct(spec, depth).word;
}

// --------------------------------------------------------------------- Measure

namespace {

Digit determined_digit(const CantorSpec& spec, const Segment& seg, std::size_t pos) {
  const std::size_t off = pos - seg.start;
  if (seg.kind == SegmentKind::Copy) return spec.x0_digit(off + 1);
  return off == spec.N() ? 1 : 0;
}

void check_determined(const CantorSpec& spec, const Segment& seg, std::size_t pos, Digit d) {
  if (d != determined_digit(spec, seg, pos)) {
    throw InconsistentPrefix("digit at position " + std::to_string(pos) + " contradicts the " +
                             to_string(seg.kind) + " of block " + std::to_string(seg.k));
  }
}

}  // namespace

Rational mu_mass(const CantorSpec& spec, std::size_t n, const DigitWord& prefix) {
  if (prefix.size() < n) throw DomainError("prefix shorter than n");
  if (n == 0) return Rational(1);
  const FollowerAutomaton& fa = spec.beta_n_automaton();
  Rational mass(1);
  for (const Segment& seg : spec.segments_until(n)) {
    if (seg.start > n) break;
    const std::size_t last = std::min(seg.end(), n);
    if (seg.kind != SegmentKind::Free) {
      for (std::size_t pos = seg.start; pos <= last; ++pos) {
        check_determined(spec, seg, pos, prefix[pos - 1]);
      }
      continue;
    }
    std::size_t state = 0;
    for (std::size_t pos = seg.start; pos <= last; ++pos) {
      auto next = fa.step(state, prefix[pos - 1]);
      if (!next) return Rational(0);
      state = *next;
    }
    const std::size_t read = last - seg.start + 1;
    Rational share(fa.completions(state, seg.length - read), fa.count(seg.length));
    share.canonicalize();
    mass *= share;
  }
  return mass;
}

Rational mu_table_value(const CantorSpec& spec, std::size_t n) {
  const FollowerAutomaton& fa = spec.beta_n_automaton();
  Rational value(1);
  if (n == 0) return value;
  for (const Segment& seg : spec.segments_until(n)) {
    if (seg.start > n) break;
    if (seg.kind != SegmentKind::Free) continue;
    const std::size_t read = std::min(seg.end(), n) - seg.start + 1;
    value /= Rational(fa.count(read));
  }
  return value;
}

// ------------------------------------------------------------- Local dimension

std::vector<LocalDimPoint> local_dimension_series(const CantorSpec& spec, std::size_t k_max) {
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  const std::size_t depth = std::max(spec.placement(k_max).h, spec.placement(2).l);
  const DigitWord word = construct_point(spec, depth);
  auto trace = follower_trace(spec.bp(), word);
  if (!trace) throw VerificationFailed("constructed word is not admissible for beta");
  const auto segments = spec.segments_until(depth);
  FollowerLogCounts counts(spec.beta_n_automaton());
  const double log2b = spec.bp().log2_beta();
  std::vector<LocalDimPoint> out;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const std::size_t h = spec.placement(k).h;
    LocalDimPoint pt;
    pt.k = k;
    pt.h = h;
    for (const Segment& seg : segments) {
      if (seg.kind == SegmentKind::Free && seg.end() <= h) pt.neg_log2_mu += counts.count(seg.length);
    }
    const std::size_t j = (*trace)[h];
    pt.neg_log2_length = static_cast<double>(h) * log2b - spec.bp().t_power_one(j).log2_abs();
    pt.ratio = pt.neg_log2_mu / pt.neg_log2_length;
    out.push_back(pt);
  }
  return out;
}

std::vector<double> local_ratio_profile(const CantorSpec& spec, const DigitWord& word,
                                        const std::vector<std::size_t>& positions) {
  if (positions.empty()) return {};
  const std::size_t max_n = *std::max_element(positions.begin(), positions.end());
  if (max_n == 0) throw DomainError("positions are 1-based");
  if (word.size() < max_n) throw DomainError("word shorter than the largest position");
  const DigitWord w = word.prefix(max_n);
  auto trace = follower_trace(spec.bp(), w);
  if (!trace) throw NotAdmissible("word is not admissible for beta");
  const FollowerAutomaton& fa = spec.beta_n_automaton();
  FollowerLogCounts counts(fa);

  // neg[n] = -log2 mu(I_n) for n = 0..max_n.
  std::vector<double> neg(max_n + 1, 0.0);
  double completed = 0;
  bool dead = false;
  std::size_t pos = 1;
  for (const Segment& seg : spec.segments_until(max_n)) {
    std::size_t state = 0;
    for (; pos <= seg.end() && pos <= max_n; ++pos) {
      if (dead) {
        neg[pos] = kInfinity;
        continue;
      }
      if (seg.kind != SegmentKind::Free) {
        check_determined(spec, seg, pos, w[pos - 1]);
        neg[pos] = completed;
        continue;
      }
      auto next = fa.step(state, w[pos - 1]);
      if (!next) {
        dead = true;
        neg[pos] = kInfinity;
        continue;
      }
      state = *next;
      const std::size_t read = pos - seg.start + 1;
      neg[pos] = completed + counts.count(seg.length) -
                 counts.completions(state, seg.length - read);
    }
    if (seg.kind == SegmentKind::Free) completed += counts.count(seg.length);
    if (pos > max_n) break;
  }

  const double log2b = spec.bp().log2_beta();
  std::vector<double> out;
  out.reserve(positions.size());
  for (std::size_t n : positions) {
    if (n == 0) throw DomainError("positions are 1-based");
    const double len = static_cast<double>(n) * log2b - spec.bp().t_power_one((*trace)[n]).log2_abs();
    out.push_back(neg[n] / len);
  }
  return out;
}

}  // namespace betadyn
