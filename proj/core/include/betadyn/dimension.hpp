#pragma once

#include <cstddef>
#include <optional>

#include "betadyn/admissibility.hpp"
#include "betadyn/beta_core.hpp"
#include "betadyn/cantor.hpp"
#include "betadyn/exponents.hpp"

namespace betadyn {

enum class Regime { Empty, Boundary, Interior };
const char* to_string(Regime r);

/// Dimension of {x : V(x) = v, Vhat(x) = vhat}. No value when the set is
/// empty; the value is 0 on the boundary vhat = v/(1+v).
struct DimResult {
  Regime regime = Regime::Empty;
  std::optional<Rational> value;

  double as_double() const;
};

/// (v - vhat - v vhat) / ((1+v)(v - vhat)), empty when v(1 - vhat) < vhat.
DimResult dim_formula(const Rational& v, const Rational& vhat);
DimResult dim_formula(double v, double vhat);

/// ((1 - vhat)/(1 + vhat))^2 for vhat in [0,1].
Rational dim_hat_formula(const Rational& vhat);
double dim_hat_formula(double vhat);

struct MaxOverV {
  double v_star = 0;
  double value = 0;
};

/// Golden-section maximization of dim_formula over v from vhat/(1-vhat) up
/// to the larger of vhat/(1-vhat) + cap_extra and 4 vhat/(1-vhat).
MaxOverV dim_formula_max_over_v(double vhat, double cap_extra = 50.0);
/// 2 vhat / (1 - vhat).
double analytic_v_star(double vhat);

/// log #(depth-n words consistent with the construction) / (n log beta),
/// with the count taken as the product of beta_N word counts over the free
/// slots meeting [1, n].
double covering_dimension_estimate(const CantorSpec& spec, std::size_t n);
/// Unconstrained control: log count_words(beta, n) / (n log beta).
double covering_dimension_estimate(const BetaParam& bp, std::size_t n);

/// dim_formula(v, vhat) * log beta_N / log beta.
double local_dimension_target(const CantorSpec& spec);

/// The beta > 1 whose expansion of 1 is exactly w (finite). Verified by
/// re-expanding 1.
BetaParam solve_beta_from_self_admissible(const DigitWord& w);

/// Exponents of the orbit of 1 under T_beta.
ExponentEstimate parameter_exponents(const BetaParam& bp, const Real& x0, std::size_t horizon,
                                     const EstimateOptions& opts = {});
ExponentEstimate parameter_exponents(const DigitWord& w, const Real& x0, std::size_t horizon,
                                     const EstimateOptions& opts = {});

}  // namespace betadyn
