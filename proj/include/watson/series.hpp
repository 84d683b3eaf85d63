#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "watson/precision.hpp"
#include "watson/rational.hpp"
#include "watson/xreal.hpp"

namespace watson {

/// pFq(a_1..a_p; b_1..b_q; z) = sum_n (a_1)_n...(a_p)_n / ((b_1)_n...(b_q)_n) z^n / n!
///
/// Parameters are exact rationals; decimal inputs and sampled values are all
/// representable, and exactness lets terminating series be summed without
/// rounding.
struct PFQ {
  std::vector<Rational> numerators;
  std::vector<Rational> denominators;
  Rational argument{1};
};

enum class EvalMethod { exact_rational, direct, accelerated, closed_form };

std::string_view to_string(EvalMethod method) noexcept;

struct EvalResult {
  XReal value;
  XReal abs_err_bound;
  std::size_t terms_used = 0;
  EvalMethod method = EvalMethod::direct;
  bool converged = false;
  /// Set whenever the value is known exactly (terminating rational sums,
  /// exact zeros of closed forms).
  std::optional<Rational> exact;
};

struct EvalOptions {
  /// Target error; absolute for |value| <= 1, relative above that.
  XReal tol;
  std::size_t max_terms_direct = 10000;
  std::size_t max_terms_accelerated = 2000;

  /// tol = 10^-digits.
  static EvalOptions for_context(const PrecisionCtx& ctx);
  /// tol = 10^-exponent10 at the context's precision.
  static EvalOptions with_tolerance(const PrecisionCtx& ctx, long exponent10);

  /// tol scaled by max(1, |value|).
  XReal effective_tol(const XReal& value) const;
};

/// Σ denominators − Σ numerators, for z = 1. Throws argument_not_unity.
Rational convergence_margin(const PFQ& f);

/// Smallest m such that some numerator equals −m, if any numerator is a
/// nonpositive integer.
std::optional<unsigned long> termination_degree(const PFQ& f);

/// Throws invalid_series (p > q+1) or denominator_pole (a denominator within
/// pole_guard of −m' for an index m' the series actually reaches).
void validate(const PFQ& f, const PrecisionCtx& ctx);

/// n-th term computed from explicit Pochhammer products.
Rational exact_term(const PFQ& f, unsigned long n);

/// term_{n+1} / term_n from the parameter recurrence.
Rational term_ratio(const PFQ& f, unsigned long n);

/// Exact finite sum of a terminating series. Throws not_terminating.
Rational eval_exact(const PFQ& f);

/// Unit-argument evaluation. Terminating series are summed exactly; margins
/// above 1 try direct summation first; everything else goes through the
/// Levin u-transform. Throws divergent_series when the margin is <= 0 and the
/// series does not terminate.
EvalResult eval_unit(const PFQ& f, const PrecisionCtx& ctx, const EvalOptions& opts);

/// Direct summation for |z| < 1 with a geometric tail bound from the term
/// ratio. Terminating series are exact for any z. Throws outside_radius.
EvalResult eval_general(const PFQ& f, const PrecisionCtx& ctx, const EvalOptions& opts);

}  // namespace watson
