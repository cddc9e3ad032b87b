// betadyn: command-line front end for the beta-dynamics library.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "betadyn/admissibility.hpp"
#include "betadyn/beta_core.hpp"
#include "betadyn/cantor.hpp"
#include "betadyn/dimension.hpp"
#include "betadyn/errors.hpp"
#include "betadyn/exponents.hpp"
#include "betadyn/literal.hpp"

using json = nlohmann::ordered_json;
using namespace betadyn;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON has no infinity; the exact-hit sentinel is written as "inf".
json num(double x) {
  if (std::isinf(x)) return x > 0 ? json("inf") : json("-inf");
  return x;
}

json digits_json(const DigitWord& w) { return json(w.digits()); }

std::string shortest(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

Rational rational_from_json(const json& j, const char* key) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_number()) return parse_rational(shortest(j.get<double>()));
  throw UsageError(std::string("spec field '") + key + "' must be a number or a literal string");
}

std::string literal_from_json(const json& j, const char* key) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  if (j.is_number()) return shortest(j.get<double>());
  throw UsageError(std::string("spec field '") + key + "' must be a literal");
}

// Output sink: stdout or the file given with -o.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }
  void line(const json& j) { os() << j.dump() << '\n'; }

 private:
  std::ofstream file_;
};

DigitFile load_digits(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_digit_file(in);
}

// ---------------------------------------------------------------- spec input

struct SpecOptions {
  std::string file;
  std::string v, vhat;
  std::size_t N = 0;
  std::string beta, x0;
  std::uint64_t seed = 0;
  std::size_t k_max = 0;
  std::string fill = "random";
};

void add_spec_options(CLI::App* cmd, SpecOptions& o) {
  cmd->add_option("--spec", o.file, "JSON spec file {v, vhat, N, beta, x0, seed, k_max}");
  cmd->add_option("--v", o.v, "Target exponent v");
  cmd->add_option("--vhat", o.vhat, "Target uniform exponent vhat");
  cmd->add_option("--N", o.N, "Marker length N");
  cmd->add_option("--beta", o.beta, "Base literal");
  cmd->add_option("--x0", o.x0, "Target point literal");
  cmd->add_option("--seed", o.seed, "Seed for free-block digits");
  cmd->add_option("--k-max", o.k_max, "Number of schedule blocks");
  cmd->add_option("--fill", o.fill, "Free-block fill: random or zeros")
      ->check(CLI::IsMember({"random", "zeros"}));
}

CantorSpec make_spec(const SpecOptions& o) {
  CantorParams p;
  bool have_v = false, have_vhat = false, have_N = false;
  if (!o.file.empty()) {
    std::ifstream in(o.file);
    if (!in) throw IoError("cannot open '" + o.file + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw ParseError(std::string("spec file: ") + e.what());
    }
    if (j.contains("v")) p.v = rational_from_json(j["v"], "v"), have_v = true;
    if (j.contains("vhat")) p.vhat = rational_from_json(j["vhat"], "vhat"), have_vhat = true;
    if (j.contains("N")) p.N = j["N"].get<std::size_t>(), have_N = true;
    if (j.contains("beta")) p.beta = literal_from_json(j["beta"], "beta");
    if (j.contains("x0")) p.x0 = literal_from_json(j["x0"], "x0");
    if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("k_max")) p.k_max = j["k_max"].get<std::size_t>();
    if (j.contains("fill")) {
      const auto f = j["fill"].get<std::string>();
      if (f != "random" && f != "zeros") throw UsageError("fill must be random or zeros");
      p.fill = f == "zeros" ? FillPolicy::Zeros : FillPolicy::Random;
    }
  }
  if (!o.v.empty()) p.v = parse_rational(o.v), have_v = true;
  if (!o.vhat.empty()) p.vhat = parse_rational(o.vhat), have_vhat = true;
  if (o.N) p.N = o.N, have_N = true;
  if (!o.beta.empty()) p.beta = o.beta;
  if (!o.x0.empty()) p.x0 = o.x0;
  if (o.seed) p.seed = o.seed;
  if (o.k_max) p.k_max = o.k_max;
  if (o.fill == "zeros") p.fill = FillPolicy::Zeros;
  if (!have_v || !have_vhat || !have_N) throw UsageError("a spec needs v, vhat and N");
  return CantorSpec(p);
}

// ------------------------------------------------------------ point input

struct PointOptions {
  std::string beta;
  std::string x;
  std::string digits_file;
  std::string x0 = "0";
};

struct Point {
  BetaParam bp;
  std::optional<Real> x;
  std::optional<DigitWord> digits;
};

Point load_point(const PointOptions& o) {
  if (!o.x.empty() && !o.digits_file.empty()) throw UsageError("give either --x or --digits");
  if (!o.digits_file.empty()) {
    DigitFile f = load_digits(o.digits_file);
    if (!o.beta.empty() && o.beta != f.beta_literal) {
      throw UsageError("--beta differs from the digit file's base");
    }
    return Point{BetaParam::from_literal(f.beta_literal), std::nullopt, f.word};
  }
  if (o.x.empty()) throw UsageError("give --x or --digits");
  BetaParam bp = BetaParam::from_literal(o.beta.empty() ? "2" : o.beta);
  return Point{bp, make_point(bp, o.x), std::nullopt};
}

json run_json(const RunRecord& r) { return json{{"n", r.n}, {"m", r.m}, {"open_ended", r.open_ended}}; }

void emit_estimate(Sink& sink, const ExponentEstimate& est, const std::string& format) {
  if (format == "csv") {
    sink.os() << "N,vN,vhatN\n";
    for (std::size_t i = 0; i < est.v_seq.size(); ++i) {
      sink.os() << i + 1 << ',' << num(est.v_seq[i]).dump() << ',' << num(est.vhat_seq[i]).dump()
                << '\n';
    }
    return;
  }
  for (std::size_t i = 0; i < est.v_seq.size(); ++i) {
    sink.line(json{{"N", i + 1}, {"vN", num(est.v_seq[i])}, {"vhatN", num(est.vhat_seq[i])}});
  }
  json runs = json::array();
  for (const auto& r : est.runs) runs.push_back(run_json(r));
  sink.line(json{{"summary", true},
                 {"horizon", est.horizon},
                 {"window_start", est.window_start},
                 {"v_tail", num(est.v_tail)},
                 {"vhat_tail", num(est.vhat_tail)},
                 {"exact_hit", est.exact_hit ? json(*est.exact_hit) : json(nullptr)},
                 {"runs", runs}});
}

std::string rational_string(const FieldElement& x) {
  return x.is_rational() ? x.rational_value().get_str() : x.to_string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beta-transformation dynamics: expansions, admissibility, exponents, Cantor "
               "constructions and dimension formulas"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("-o,--output", out_path, "Write output to this file instead of stdout");

  // expand
  auto* expand_cmd = app.add_subcommand("expand", "Greedy digits of x (x = 1 gives d_beta(1))");
  std::string e_beta = "2", e_x, e_format = "json";
  std::size_t e_n = 0;
  expand_cmd->add_option("--beta", e_beta, "Base literal");
  expand_cmd->add_option("--x", e_x, "Point literal in [0,1]")->required();
  expand_cmd->add_option("--n", e_n, "Number of digits")->required();
  expand_cmd->add_option("--format", e_format)->check(CLI::IsMember({"json", "digits"}));

  // eps-star
  auto* eps_cmd = app.add_subcommand("eps-star", "Prefix of the quasi-greedy expansion of 1");
  std::string s_beta = "2";
  std::size_t s_n = 0;
  eps_cmd->add_option("--beta", s_beta, "Base literal");
  eps_cmd->add_option("--n", s_n, "Prefix length")->required();

  // beta-n
  auto* betan_cmd = app.add_subcommand("beta-n", "Approximating bases beta_N from eps* prefixes");
  std::string b_beta = "2";
  std::size_t b_N = 0, b_from = 0;
  betan_cmd->add_option("--beta", b_beta, "Base literal");
  betan_cmd->add_option("--N", b_N, "Largest N")->required();
  betan_cmd->add_option("--from", b_from, "Emit one record per N from this value (default: only N)");

  // admissible
  auto* adm_cmd = app.add_subcommand("admissible", "Parry admissibility of a word");
  std::string a_beta = "2", a_word;
  adm_cmd->add_option("--beta", a_beta, "Base literal");
  adm_cmd->add_option("--word", a_word, "Digits, space or comma separated")->required();

  // self-admissible
  auto* self_cmd = app.add_subcommand("self-admissible", "Self-admissibility of a word");
  std::string sa_word;
  self_cmd->add_option("--word", sa_word, "Digits")->required();

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "All admissible words of length n");
  std::string n_beta = "2";
  std::size_t n_n = 0, n_cap = kEnumerationCap;
  enum_cmd->add_option("--beta", n_beta, "Base literal");
  enum_cmd->add_option("--n", n_n, "Word length")->required();
  enum_cmd->add_option("--cap", n_cap, "Refuse to enumerate more words than this");

  // count
  auto* count_cmd = app.add_subcommand("count", "Number of admissible words of length n");
  std::string c_beta = "2";
  std::size_t c_n = 0;
  count_cmd->add_option("--beta", c_beta, "Base literal");
  count_cmd->add_option("--n", c_n, "Word length")->required();

  // cylinder
  auto* cyl_cmd = app.add_subcommand("cylinder", "Cylinder interval of an admissible word");
  std::string y_beta = "2", y_word;
  cyl_cmd->add_option("--beta", y_beta, "Base literal");
  cyl_cmd->add_option("--word", y_word, "Digits")->required();

  // exponents
  auto* exp_cmd = app.add_subcommand("exponents", "Finite-horizon approximation exponents");
  PointOptions x_opts;
  SpecOptions x_spec;
  std::size_t x_h = 0;
  double x_window = EstimateOptions{}.window_fraction;
  std::string x_format = "json";
  exp_cmd->add_option("--x", x_opts.x, "Point literal");
  exp_cmd->add_option("--digits", x_opts.digits_file, "Digit file holding x");
  exp_cmd->add_option("--horizon", x_h, "Horizon H")->required();
  exp_cmd->add_option("--window", x_window, "Tail window as a fraction of H");
  exp_cmd->add_option("--format", x_format)->check(CLI::IsMember({"json", "csv"}));
  add_spec_options(exp_cmd, x_spec);

  // runs
  auto* runs_cmd = app.add_subcommand("runs", "Agreement runs of x with the expansion of x0");
  PointOptions r_opts;
  std::size_t r_n = 0;
  bool r_all = false;
  runs_cmd->add_option("--beta", r_opts.beta, "Base literal");
  runs_cmd->add_option("--x", r_opts.x, "Point literal");
  runs_cmd->add_option("--digits", r_opts.digits_file, "Digit file holding x");
  runs_cmd->add_option("--x0", r_opts.x0, "Target point literal");
  runs_cmd->add_option("--n", r_n, "Digits of x to use (with --x)");
  runs_cmd->add_flag("--all", r_all, "List every maximal run, not only the extracted ones");

  // construct
  auto* con_cmd = app.add_subcommand("construct", "Digits of a point of the Cantor construction");
  SpecOptions k_spec;
  std::size_t k_depth = 0, k_h = 0;
  bool k_segments = false;
  add_spec_options(con_cmd, k_spec);
  con_cmd->add_option("--depth", k_depth, "Number of digits");
  con_cmd->add_option("--horizon", k_h, "Pick the depth needed for this exponent horizon");
  con_cmd->add_flag("--segments", k_segments, "Emit the block layout as JSON lines instead");

  // measure
  auto* mu_cmd = app.add_subcommand("measure", "Mass of the construction measure on I_n");
  SpecOptions m_spec;
  std::size_t m_n = 0;
  std::string m_digits;
  bool m_series = false;
  add_spec_options(mu_cmd, m_spec);
  mu_cmd->add_option("--n", m_n, "Depth")->required();
  mu_cmd->add_option("--digits", m_digits, "Digit file (default: the constructed point)");
  mu_cmd->add_flag("--series", m_series, "One record per depth 1..n");

  // local-dim
  auto* ld_cmd = app.add_subcommand("local-dim", "Local dimension ratios at the block ends h_k");
  SpecOptions l_spec;
  std::size_t l_k = 8;
  add_spec_options(ld_cmd, l_spec);
  ld_cmd->add_option("--k", l_k, "Largest block index");

  // dim
  auto* dim_cmd = app.add_subcommand("dim", "Dimension formulas and estimates");
  dim_cmd->require_subcommand(1);
  auto* dim_formula_cmd = dim_cmd->add_subcommand("formula", "Dimension for (v, vhat)");
  std::string d_v, d_vhat;
  dim_formula_cmd->add_option("--v", d_v)->required();
  dim_formula_cmd->add_option("--vhat", d_vhat)->required();
  auto* dim_max_cmd = dim_cmd->add_subcommand("max", "Maximize the formula over v");
  double dm_vhat = 0, dm_cap = 50;
  dim_max_cmd->add_option("--vhat", dm_vhat)->required();
  dim_max_cmd->add_option("--cap", dm_cap, "Search up to vhat/(1-vhat) + cap");
  auto* dim_est_cmd = dim_cmd->add_subcommand("estimate", "Covering-count dimension estimate");
  SpecOptions de_spec;
  std::size_t de_n = 0;
  add_spec_options(dim_est_cmd, de_spec);
  dim_est_cmd->add_option("--n", de_n, "Depth")->required();

  // param-solve
  auto* ps_cmd = app.add_subcommand("param-solve", "Base whose expansion of 1 is the given word");
  std::string ps_word;
  ps_cmd->add_option("--word", ps_word, "Self-admissible digits")->required();

  // param-exponents
  auto* pe_cmd = app.add_subcommand("param-exponents", "Exponents of the orbit of 1");
  std::string pe_beta, pe_word, pe_x0 = "0", pe_format = "json";
  std::size_t pe_h = 0;
  double pe_window = EstimateOptions{}.window_fraction;
  pe_cmd->add_option("--beta", pe_beta, "Base literal");
  pe_cmd->add_option("--word", pe_word, "Self-admissible word defining the base");
  pe_cmd->add_option("--x0", pe_x0, "Target point literal");
  pe_cmd->add_option("--horizon", pe_h, "Horizon H")->required();
  pe_cmd->add_option("--window", pe_window, "Tail window as a fraction of H");
  pe_cmd->add_option("--format", pe_format)->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Sink sink(out_path);
    if (*expand_cmd) {
      BetaParam bp = BetaParam::from_literal(e_beta);
      DigitWord w = expand(bp, make_point(bp, e_x), e_n);
      if (e_format == "digits") {
        write_digit_file(sink.os(), bp, w);
      } else {
        sink.line(json{{"beta", bp.literal()}, {"x", e_x}, {"n", e_n}, {"digits", digits_json(w)}});
      }
    } else if (*eps_cmd) {
      BetaParam bp = BetaParam::from_literal(s_beta);
      auto m = bp.simple_parry_within(s_n);
      sink.line(json{{"beta", bp.literal()},
                     {"n", s_n},
                     {"eps_star", digits_json(eps_star_prefix(bp, s_n))},
                     {"d1", digits_json(expand_one(bp, s_n))},
                     {"simple_parry_period", m ? json(*m) : json(nullptr)}});
    } else if (*betan_cmd) {
      BetaParam bp = BetaParam::from_literal(b_beta);
      const std::size_t from = b_from ? b_from : b_N;
      if (from > b_N) throw UsageError("--from exceeds --N");
      for (std::size_t N = from; N <= b_N; ++N) {
        DigitWord prefix = eps_star_prefix(bp, N);
        json rec{{"N", N}, {"prefix", digits_json(prefix)}};
        try {
          FieldElement bn = solve_beta_n_exact(prefix, N);
          rec["beta_N"] = bn.to_double();
          rec["literal"] = format_literal(bn);
          rec["gap"] = (bp.beta() - bn).to_double();
        } catch (const InvalidPrefix& e) {
          if (from == b_N) throw;
          rec["error"] = e.name();
        }
        sink.line(rec);
      }
    } else if (*adm_cmd) {
      BetaParam bp = BetaParam::from_literal(a_beta);
      DigitWord w = DigitWord::parse(a_word);
      auto state = follower_state(bp, w);
      sink.line(json{{"beta", bp.literal()},
                     {"word", digits_json(w)},
                     {"admissible", state.has_value()},
                     {"state", state ? json(*state) : json(nullptr)}});
    } else if (*self_cmd) {
      DigitWord w = DigitWord::parse(sa_word);
      sink.line(json{{"word", digits_json(w)}, {"self_admissible", is_self_admissible(w)}});
    } else if (*enum_cmd) {
      BetaParam bp = BetaParam::from_literal(n_beta);
      for (const auto& w : enumerate_words(bp, n_n, n_cap)) sink.os() << w.to_string() << '\n';
    } else if (*count_cmd) {
      BetaParam bp = BetaParam::from_literal(c_beta);
      Integer c = count_words(bp, c_n);
      CountBounds b = count_bounds(bp, c_n, c);
      json count = c.fits_slong_p() ? json(c.get_si()) : json(c.get_str());
      sink.line(json{{"n", c_n},
                     {"count", count},
                     {"lower", b.lower},
                     {"upper", b.upper},
                     {"bounds_hold", b.lower_ok && b.upper_ok}});
    } else if (*cyl_cmd) {
      BetaParam bp = BetaParam::from_literal(y_beta);
      Cylinder c = cylinder(bp, DigitWord::parse(y_word));
      sink.line(json{{"word", digits_json(c.word)},
                     {"left", c.left.to_double()},
                     {"length", c.length.to_double()},
                     {"left_exact", rational_string(c.left)},
                     {"length_exact", rational_string(c.length)},
                     {"is_full", c.is_full},
                     {"state", c.state}});
    } else if (*exp_cmd) {
      EstimateOptions opts{x_window};
      const bool from_spec = !x_spec.file.empty() || !x_spec.v.empty();
      if (from_spec) {
        if (!x_opts.x.empty() || !x_opts.digits_file.empty()) {
          throw UsageError("give a spec or a point, not both");
        }
        CantorSpec spec = make_spec(x_spec);
        DigitWord w = construct_point(spec, spec.required_depth(x_h));
        emit_estimate(sink, estimate_exponents(spec.bp(), w, spec.x0(), x_h, opts), x_format);
      } else {
        x_opts.beta = x_spec.beta;
        Point p = load_point(x_opts);
        Real x0 = make_point(p.bp, x_spec.x0.empty() ? "0" : x_spec.x0);
        ExponentEstimate est = p.digits ? estimate_exponents(p.bp, *p.digits, x0, x_h, opts)
                                        : estimate_exponents(p.bp, *p.x, x0, x_h, opts);
        emit_estimate(sink, est, x_format);
      }
    } else if (*runs_cmd) {
      Point p = load_point(r_opts);
      DigitWord xd;
      if (p.digits) {
        xd = *p.digits;
      } else {
        if (r_n == 0) throw UsageError("--n is required with --x");
        xd = expand(p.bp, *p.x, r_n);
      }
      DigitWord x0d = expand(p.bp, make_point(p.bp, r_opts.x0), xd.size());
      for (const auto& r : r_all ? maximal_runs(xd, x0d) : run_decomposition(xd, x0d)) {
        sink.line(run_json(r));
      }
    } else if (*con_cmd) {
      CantorSpec spec = make_spec(k_spec);
      if ((k_depth == 0) == (k_h == 0)) throw UsageError("give exactly one of --depth, --horizon");
      const std::size_t depth = k_depth ? k_depth : spec.required_depth(k_h);
      if (k_segments) {
        for (const Segment& s : spec.segments_until(depth)) {
          sink.line(json{{"kind", to_string(s.kind)},
                         {"start", s.start},
                         {"length", s.length},
                         {"k", s.k}});
        }
      } else {
        Construction c = construct(spec, depth);
        for (const auto& note : c.guard_log) std::cerr << "guard: " << note << '\n';
        write_digit_file(sink.os(), spec.bp(), c.word);
      }
    } else if (*mu_cmd) {
      CantorSpec spec = make_spec(m_spec);
      DigitWord w;
      if (!m_digits.empty()) {
        w = load_digits(m_digits).word;
      } else {
        w = construct_point(spec, std::max(m_n, spec.placement(2).l));
      }
      const std::size_t first = m_series ? 1 : m_n;
      for (std::size_t n = first; n <= m_n; ++n) {
        Rational mass = mu_mass(spec, n, w);
        Rational table = mu_table_value(spec, n);
        sink.line(json{{"n", n},
                       {"mass", mass.get_str()},
                       {"neg_log2_mass", num(mass == 0 ? kInfinity : -log2_abs(mass))},
                       {"table", table.get_str()}});
      }
    } else if (*ld_cmd) {
      CantorSpec spec = make_spec(l_spec);
      for (const auto& p : local_dimension_series(spec, l_k)) {
        sink.line(json{{"k", p.k},
                       {"h", p.h},
                       {"neg_log2_mu", p.neg_log2_mu},
                       {"neg_log2_length", p.neg_log2_length},
                       {"ratio", p.ratio}});
      }
      sink.line(json{{"summary", true}, {"target", local_dimension_target(spec)}});
    } else if (*dim_formula_cmd) {
      Rational v = parse_rational(d_v), vhat = parse_rational(d_vhat);
      DimResult r = dim_formula(v, vhat);
      json rec{{"v", to_double(v)}, {"vhat", to_double(vhat)}, {"regime", to_string(r.regime)}};
      if (r.value) {
        rec["dimension"] = to_double(*r.value);
        rec["exact"] = r.value->get_str();
      }
      sink.line(rec);
    } else if (*dim_max_cmd) {
      MaxOverV m = dim_formula_max_over_v(dm_vhat, dm_cap);
      sink.line(json{{"vhat", dm_vhat},
                     {"v_star", m.v_star},
                     {"value", m.value},
                     {"analytic_v_star", analytic_v_star(dm_vhat)},
                     {"dim_hat", dim_hat_formula(dm_vhat)}});
    } else if (*dim_est_cmd) {
      const bool from_spec = !de_spec.file.empty() || !de_spec.v.empty();
      if (from_spec) {
        CantorSpec spec = make_spec(de_spec);
        sink.line(json{{"n", de_n},
                       {"estimate", covering_dimension_estimate(spec, de_n)},
                       {"target", local_dimension_target(spec)}});
      } else {
        BetaParam bp = BetaParam::from_literal(de_spec.beta.empty() ? "2" : de_spec.beta);
        sink.line(json{{"n", de_n}, {"estimate", covering_dimension_estimate(bp, de_n)}});
      }
    } else if (*ps_cmd) {
      DigitWord w = DigitWord::parse(ps_word);
      BetaParam bp = solve_beta_from_self_admissible(w);
      sink.line(json{{"word", digits_json(w)},
                     {"beta", format_literal(bp.beta())},
                     {"beta_value", bp.to_double()}});
    } else if (*pe_cmd) {
      if (pe_beta.empty() == pe_word.empty()) throw UsageError("give exactly one of --beta, --word");
      BetaParam bp = pe_word.empty() ? BetaParam::from_literal(pe_beta)
                                     : solve_beta_from_self_admissible(DigitWord::parse(pe_word));
      ExponentEstimate est =
          parameter_exponents(bp, make_point(bp, pe_x0), pe_h, EstimateOptions{pe_window});
      if (pe_format == "json") sink.line(json{{"beta", format_literal(bp.beta())}});
      emit_estimate(sink, est, pe_format);
    }
  } catch (const UsageError& e) {
    std::cerr << "UsageError: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << e.name() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "Error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
