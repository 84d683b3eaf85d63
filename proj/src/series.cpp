#include "watson/series.hpp"

#include <algorithm>
#include <cmath>

#include "watson/accelerate.hpp"
#include "watson/error.hpp"
#include "watson/gamma.hpp"

namespace watson {

namespace {

// Extra decimal digits carried through summation; the Levin transform loses
// roughly half a digit per order to cancellation.
unsigned accelerated_digits(const PrecisionCtx& ctx) { return 2 * ctx.digits + 20; }

bool has_zero_numerator(const PFQ& f) {
  return std::any_of(f.numerators.begin(), f.numerators.end(),
                     [](const Rational& a) { return a == 0; });
}

EvalResult exact_result(const Rational& value, std::size_t terms, const PrecisionCtx& ctx) {
  XReal v(value, ctx.bits());
  XReal err = abs(v - XReal(value, ctx.bits() + 64));
  return EvalResult{std::move(v), std::move(err), terms, EvalMethod::exact_rational, true, value};
}

// Generates term_0, term_1, ... by the ratio recurrence at a fixed precision.
class TermStream {
 public:
  TermStream(const PFQ& f, mpfr_prec_t bits) : term_(1L, bits), z_(f.argument, bits) {
    for (const auto& a : f.numerators) numerators_.emplace_back(a, bits);
    for (const auto& b : f.denominators) denominators_.emplace_back(b, bits);
  }

  XReal next() {
    XReal out = term_;
    XReal num = z_;
    XReal den(static_cast<long>(n_ + 1), term_.precision());
    for (auto& a : numerators_) {
      num *= a;
      a += 1L;
    }
    for (auto& b : denominators_) {
      den *= b;
      b += 1L;
    }
    term_ *= num;
    term_ /= den;
    ++n_;
    return out;
  }

  std::size_t index() const { return n_; }

 private:
  XReal term_;
  XReal z_;
  std::vector<XReal> numerators_;
  std::vector<XReal> denominators_;
  std::size_t n_ = 0;
};

double max_abs_parameter(const PFQ& f) {
  double m = 0.0;
  for (const auto& a : f.numerators) m = std::max(m, std::fabs(a.get_d()));
  for (const auto& b : f.denominators) m = std::max(m, std::fabs(b.get_d()));
  return m;
}

// First index from which every (p + n) is positive, so the terms keep one sign.
std::size_t sign_stable_index(const PFQ& f) {
  double lowest = 0.0;
  for (const auto& a : f.numerators) lowest = std::min(lowest, a.get_d());
  for (const auto& b : f.denominators) lowest = std::min(lowest, b.get_d());
  return static_cast<std::size_t>(std::ceil(-lowest)) + 1;
}

double log_abs(const XReal& x) {
  return log(abs(x)).to_double();
}

// Direct summation at z = 1 for margins above one. Returns nothing when the
// predicted number of terms exceeds the budget.
std::optional<EvalResult> direct_unit(const PFQ& f, const Rational& margin, const PrecisionCtx& ctx,
                                      const EvalOptions& opts) {
  const mpfr_prec_t bits = ctx.bits() + 32;
  const double s = margin.get_d();
  const std::size_t trusted_from =
      static_cast<std::size_t>(4.0 * max_abs_parameter(f)) + sign_stable_index(f) + 10;

  TermStream stream(f, bits);
  XReal sum(bits), abs_sum(bits);
  const XReal ulp = exp2(XReal(-static_cast<long>(bits), bits));
  for (std::size_t n = 0; n < opts.max_terms_direct; ++n) {
    XReal t = stream.next();
    sum += t;
    abs_sum += abs(t);
    if (n < trusted_from || n % 16 != 0) continue;

    // term ~ C n^-(1+s)  =>  tail after n ~ C n^-s / s
    XReal tail = abs(t) * static_cast<long>(n + 1) * 2L / XReal(margin, bits);
    XReal bound = tail + abs_sum * ulp * static_cast<long>(n + 1);
    XReal tol = opts.effective_tol(sum);
    if (bound <= tol) {
      return EvalResult{XReal(sum, ctx.bits()), std::move(bound), n + 1, EvalMethod::direct, true, {}};
    }
    const double log_c = log_abs(t) + (1.0 + s) * std::log(static_cast<double>(n));
    const double log_tol = log_abs(tol);
    const double predicted = (log_c - std::log(s) - log_tol) / s;
    if (predicted > std::log(static_cast<double>(opts.max_terms_direct))) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(EvalMethod method) noexcept {
  switch (method) {
    case EvalMethod::exact_rational: return "exact_rational";
    case EvalMethod::direct: return "direct";
    case EvalMethod::accelerated: return "accelerated";
    case EvalMethod::closed_form: return "closed_form";
  }
  return "unknown";
}

EvalOptions EvalOptions::for_context(const PrecisionCtx& ctx) {
  return with_tolerance(ctx, static_cast<long>(ctx.digits));
}

EvalOptions EvalOptions::with_tolerance(const PrecisionCtx& ctx, long exponent10) {
  EvalOptions o;
  o.tol = pow10_neg(exponent10, ctx.bits());
  return o;
}

XReal EvalOptions::effective_tol(const XReal& value) const {
  return tol * max(XReal::one(tol.precision()), abs(value));
}

Rational convergence_margin(const PFQ& f) {
  if (f.argument != 1) {
    throw Error(ErrorCode::argument_not_unity, "convergence margin is defined at z = 1 only");
  }
  Rational s(0);
  for (const auto& b : f.denominators) s += b;
  for (const auto& a : f.numerators) s -= a;
  return s;
}

std::optional<unsigned long> termination_degree(const PFQ& f) {
  std::optional<unsigned long> degree;
  for (const auto& a : f.numerators) {
    if (!is_nonpositive_integer(a)) continue;
    unsigned long m = mpz_class(-a.get_num()).get_ui();
    if (!degree || m < *degree) degree = m;
  }
  return degree;
}

void validate(const PFQ& f, const PrecisionCtx& ctx) {
  if (f.numerators.size() > f.denominators.size() + 1) {
    throw Error(ErrorCode::invalid_series, "p > q + 1: the series diverges for every z != 0");
  }
  const auto degree = termination_degree(f);
  for (const auto& b : f.denominators) {
    if (!near_nonpositive_integer(b, ctx.pole_guard)) continue;
    if (!degree) {
      throw Error(ErrorCode::denominator_pole, "denominator parameter " + to_string(b) +
                                                    " is at or near a nonpositive integer");
    }
    // b ~ -m' breaks term m'+1; the finite sum stops at its degree.
    mpz_class nearest;
    Rational shifted = b - Rational(1, 2);
    mpz_cdiv_q(nearest.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    const long m_prime = -nearest.get_si();
    if (m_prime < static_cast<long>(*degree)) {
      throw Error(ErrorCode::denominator_pole, "denominator parameter " + to_string(b) +
                                                    " vanishes before the series terminates");
    }
  }
}

Rational exact_term(const PFQ& f, unsigned long n) {
  Rational num(1), den(1);
  for (const auto& a : f.numerators) num *= pochhammer(a, n);
  for (const auto& b : f.denominators) den *= pochhammer(b, n);
  den *= pochhammer(Rational(1), n);
  Rational zn(1);
  for (unsigned long k = 0; k < n; ++k) zn *= f.argument;
  if (den == 0) throw Error(ErrorCode::denominator_pole, "zero denominator at term " + std::to_string(n));
  Rational t = num * zn / den;
  t.canonicalize();
  return t;
}

Rational term_ratio(const PFQ& f, unsigned long n) {
  Rational num(f.argument), den(static_cast<unsigned long>(n + 1));
  for (const auto& a : f.numerators) num *= a + n;
  for (const auto& b : f.denominators) den *= b + n;
  if (den == 0) throw Error(ErrorCode::denominator_pole, "zero denominator after term " + std::to_string(n));
  Rational r = num / den;
  r.canonicalize();
  return r;
}

Rational eval_exact(const PFQ& f) {
  const auto degree = termination_degree(f);
  if (!degree) throw Error(ErrorCode::not_terminating, "no numerator is a nonpositive integer");
  Rational sum(0), term(1);
  for (unsigned long n = 0; n <= *degree; ++n) {
    sum += term;
    if (n < *degree) term *= term_ratio(f, n);
  }
  sum.canonicalize();
  return sum;
}

EvalResult eval_unit(const PFQ& f, const PrecisionCtx& ctx, const EvalOptions& opts) {
  if (f.argument != 1) {
    throw Error(ErrorCode::argument_not_unity, "eval_unit requires z = 1");
  }
  validate(f, ctx);
  if (has_zero_numerator(f)) return exact_result(Rational(1), 1, ctx);
  if (const auto degree = termination_degree(f)) return exact_result(eval_exact(f), *degree + 1, ctx);

  const Rational margin = convergence_margin(f);
  if (margin <= 0) {
    throw Error(ErrorCode::divergent_series,
                "non-terminating unit-argument series with margin " + to_string(margin) + " <= 0");
  }
  if (margin > 1) {
    if (auto direct = direct_unit(f, margin, ctx, opts)) return std::move(*direct);
  }

  const PrecisionCtx work = ctx.widened(accelerated_digits(ctx) - ctx.digits);
  TermStream stream(f, work.bits());
  LevinOptions lopts{XReal(opts.tol, work.bits()), sign_stable_index(f), opts.max_terms_accelerated};
  Extrapolation e = accelerate_levin_u([&stream] { return stream.next(); }, lopts);
  return EvalResult{XReal(e.value, ctx.bits()), XReal(e.error_estimate, ctx.bits()), e.terms_used,
                    EvalMethod::accelerated, e.converged, {}};
}

EvalResult eval_general(const PFQ& f, const PrecisionCtx& ctx, const EvalOptions& opts) {
  validate(f, ctx);
  if (has_zero_numerator(f) || f.argument == 0) return exact_result(Rational(1), 1, ctx);
  if (const auto degree = termination_degree(f)) return exact_result(eval_exact(f), *degree + 1, ctx);
  if (abs(f.argument) >= 1) {
    throw Error(ErrorCode::outside_radius, "|z| = " + to_decimal_string(abs(f.argument)) + " >= 1");
  }

  const mpfr_prec_t bits = ctx.bits() + 32;
  const XReal one = XReal::one(bits);
  const XReal z_abs(Rational(abs(f.argument)), bits);

  // sup_{m >= n} |ratio(m)|: pair numerators with denominators (the n! factor
  // acting as a denominator with parameter 1); each factor decreases in m.
  auto ratio_bound = [&](std::size_t n) -> std::optional<XReal> {
    std::vector<Rational> dens = f.denominators;
    dens.push_back(Rational(1));
    XReal rho = z_abs;
    for (std::size_t i = 0; i < dens.size(); ++i) {
      Rational shifted = dens[i] + static_cast<unsigned long>(n);
      if (shifted <= 0) return std::nullopt;
      if (i < f.numerators.size()) {
        rho *= one + XReal(Rational(abs(f.numerators[i] - dens[i]) / shifted), bits);
      } else {
        rho /= XReal(shifted, bits);
      }
    }
    return rho;
  };

  TermStream stream(f, bits);
  XReal sum(bits), abs_sum(bits);
  const XReal ulp = exp2(XReal(-static_cast<long>(bits), bits));
  XReal last_bound(bits);
  for (std::size_t n = 0; n < opts.max_terms_direct; ++n) {
    XReal t = stream.next();
    sum += t;
    abs_sum += abs(t);
    auto rho = ratio_bound(n + 1);
    if (!rho || *rho >= 1.0) continue;
    // The next term is t * ratio(n); bound it by |t| * rho_n via the same estimate.
    auto rho_n = ratio_bound(n);
    if (!rho_n) continue;
    XReal next_abs = abs(t) * *rho_n;
    XReal bound = next_abs / (one - *rho) + abs_sum * ulp * static_cast<long>(n + 1);
    last_bound = bound;
    if (bound <= opts.effective_tol(sum)) {
      return EvalResult{XReal(sum, ctx.bits()), std::move(bound), n + 1, EvalMethod::direct, true, {}};
    }
  }
  return EvalResult{XReal(sum, ctx.bits()), std::move(last_bound), opts.max_terms_direct,
                    EvalMethod::direct, false, {}};
}

}  // namespace watson
