#pragma once

#include <span>
#include <vector>

#include "watson/precision.hpp"
#include "watson/rational.hpp"
#include "watson/xreal.hpp"

namespace watson {

/// ln|Γ(x)| with the sign of Γ(x), or a pole marker.
struct GammaFactor {
  XReal value_ln;
  int sign = 1;
  bool pole = false;
};

/// Rising factorial α(α+1)···(α+n−1) by running product; (α)_0 = 1.
XReal pochhammer(const XReal& alpha, unsigned long n);
Rational pochhammer(const Rational& alpha, unsigned long n);

/// Log-gamma by Stirling's series after upward argument shifting; negative
/// arguments go through the reflection formula. Arguments within
/// ctx.pole_guard of a nonpositive integer come back with `pole` set.
///
/// The returned logarithm carries 32 guard bits beyond ctx.bits().
GammaFactor ln_gamma(const XReal& x, const PrecisionCtx& ctx);

/// B_{2k} for k >= 1, exact. Backed by an append-only memo table.
const Rational& bernoulli_even(std::size_t k);

enum class GammaProductStatus { value, zero, numerator_pole };

struct GammaProduct {
  GammaProductStatus status = GammaProductStatus::value;
  /// Meaningful for `value`; exactly zero for `zero`.
  XReal value;
};

/// ∏Γ(numerators) / ∏Γ(denominators) through summed log-gammas.
///
/// More denominator poles than numerator poles gives the exact value zero.
/// Any numerator pole that is not outnumbered gives `numerator_pole`; the
/// limit of such a quotient is not evaluated.
GammaProduct gamma_product(std::span<const XReal> numerators,
                           std::span<const XReal> denominators,
                           const PrecisionCtx& ctx);

}  // namespace watson
