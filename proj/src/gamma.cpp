#include "watson/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <mutex>

namespace watson {

namespace {

constexpr mpfr_prec_t kGuardBits = 32;

std::mutex& bernoulli_mutex() {
  static std::mutex m;
  return m;
}

// B_0, B_1, B_2, ... ; deque keeps element addresses stable across growth.
std::deque<Rational>& bernoulli_table() {
  static std::deque<Rational> table{Rational(1), Rational(-1, 2)};
  return table;
}

void extend_bernoulli(std::deque<Rational>& table, std::size_t upto) {
  while (table.size() <= upto) {
    const std::size_t m = table.size();
    if (m % 2 == 1) {
      table.emplace_back(0);
      continue;
    }
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    Rational acc(0);
    mpz_class binom(1);  // C(m+1, 0)
    for (std::size_t j = 0; j < m; ++j) {
      if (table[j] != 0) acc += Rational(binom) * table[j];
      binom = binom * static_cast<unsigned long>(m + 1 - j) / static_cast<unsigned long>(j + 1);
    }
    Rational b = -acc / Rational(static_cast<unsigned long>(m + 1));
    b.canonicalize();
    table.push_back(std::move(b));
  }
}

// Stirling series for ln Γ(y), y already large enough for the asymptotic
// expansion to reach 2^-bits.
XReal stirling_ln_gamma(const XReal& y, mpfr_prec_t bits) {
  XReal two_pi = XReal::pi(bits) * 2L;
  XReal result = (y - XReal(0.5, bits)) * log(y) - y + log(two_pi) / 2L;

  const XReal y2_inv = XReal::one(bits) / (y * y);
  XReal power = XReal::one(bits) / y;  // y^-(2k-1)
  const XReal eps = exp2(XReal(-static_cast<long>(bits), bits));
  XReal previous(bits);
  for (std::size_t k = 1;; ++k) {
    XReal term = power * bernoulli_even(k);
    term /= static_cast<long>((2 * k) * (2 * k - 1));
    XReal magnitude = abs(term);
    if (k > 1 && magnitude > previous) break;  // asymptotic series has turned
    result += term;
    if (magnitude < eps) break;
    previous = magnitude;
    power *= y2_inv;
  }
  return result;
}

// ln Γ(y) for y >= 1/2.
XReal ln_gamma_positive(const XReal& y, mpfr_prec_t bits) {
  const double digits = static_cast<double>(bits) / 3.3219280948873623;
  const long threshold = static_cast<long>(std::ceil(0.8 * digits));
  if (y >= static_cast<double>(threshold)) return stirling_ln_gamma(y, bits);

  // Γ(y) = Γ(y+m) / (y (y+1) ... (y+m-1))
  const long m = static_cast<long>(std::ceil(threshold - y.to_double()));
  XReal product = XReal::one(bits);
  XReal shifted(y, bits);
  for (long k = 0; k < m; ++k) {
    product *= shifted;
    shifted += 1L;
  }
  return stirling_ln_gamma(shifted, bits) - log(product);
}

}  // namespace

const Rational& bernoulli_even(std::size_t k) {
  std::lock_guard lock(bernoulli_mutex());
  auto& table = bernoulli_table();
  extend_bernoulli(table, 2 * k);
  return table[2 * k];
}

XReal pochhammer(const XReal& alpha, unsigned long n) {
  XReal result = XReal::one(alpha.precision());
  XReal factor(alpha);
  for (unsigned long k = 0; k < n; ++k) {
    result *= factor;
    factor += 1L;
  }
  return result;
}

Rational pochhammer(const Rational& alpha, unsigned long n) {
  Rational result(1);
  Rational factor(alpha);
  for (unsigned long k = 0; k < n; ++k) {
    result *= factor;
    factor += 1;
  }
  return result;
}

GammaFactor ln_gamma(const XReal& x, const PrecisionCtx& ctx) {
  const mpfr_prec_t bits = std::max(ctx.bits(), x.precision()) + kGuardBits;
  XReal arg(x, bits);

  XReal nearest = round(arg);
  if (nearest <= 0.0 && abs(arg - nearest) <= ctx.pole_guard) {
    return GammaFactor{XReal(bits), 1, true};
  }

  if (arg >= 0.5) return GammaFactor{ln_gamma_positive(arg, bits), 1, false};

  // Γ(x) Γ(1-x) = π / sin(πx); sin(πx) = (-1)^r sin(π(x - r)) for r = round(x).
  XReal pi = XReal::pi(bits);
  XReal reduced_sin = sin(pi * (arg - nearest));
  long r = static_cast<long>(nearest.to_double());
  int sign = reduced_sin.sign() * ((r % 2 == 0) ? 1 : -1);
  XReal reflected = XReal::one(bits) - arg;
  XReal value = log(pi) - log(abs(reduced_sin)) - ln_gamma_positive(reflected, bits);
  return GammaFactor{std::move(value), sign, false};
}

GammaProduct gamma_product(std::span<const XReal> numerators,
                           std::span<const XReal> denominators,
                           const PrecisionCtx& ctx) {
  const mpfr_prec_t bits = ctx.bits() + kGuardBits;
  XReal log_sum(bits);
  int sign = 1;
  std::size_t numerator_poles = 0;
  std::size_t denominator_poles = 0;

  for (const XReal& x : numerators) {
    GammaFactor g = ln_gamma(x, ctx);
    if (g.pole) {
      ++numerator_poles;
      continue;
    }
    log_sum += g.value_ln;
    sign *= g.sign;
  }
  for (const XReal& x : denominators) {
    GammaFactor g = ln_gamma(x, ctx);
    if (g.pole) {
      ++denominator_poles;
      continue;
    }
    log_sum -= g.value_ln;
    sign *= g.sign;
  }

  if (denominator_poles > numerator_poles) {
    return GammaProduct{GammaProductStatus::zero, XReal(ctx.bits())};
  }
  if (numerator_poles > 0) {
    return GammaProduct{GammaProductStatus::numerator_pole, XReal(ctx.bits())};
  }
  XReal value = exp(log_sum);
  if (sign < 0) value = -value;
  return GammaProduct{GammaProductStatus::value, XReal(value, ctx.bits())};
}

}  // namespace watson
