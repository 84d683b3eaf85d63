#pragma once

#include <cmath>
#include <string>

#include <mpfr.h>

#include "watson/error.hpp"

namespace watson {

/// Working precision shared by every evaluation of one run.
///
/// `digits` is the decimal working precision; internally all arithmetic is
/// binary with at least digits * log2(10) mantissa bits. `pole_guard` is the
/// minimum distance a gamma argument (or series denominator parameter) must
/// keep from the nonpositive integers before it is treated as a pole.
struct PrecisionCtx {
  static constexpr unsigned kMinDigits = 15;
  static constexpr unsigned kMaxDigits = 1000;

  unsigned digits = 50;
  double pole_guard = 0.05;

  PrecisionCtx() = default;
  explicit PrecisionCtx(unsigned digits_, double pole_guard_ = 0.05)
      : digits(digits_), pole_guard(pole_guard_) {
    if (digits < kMinDigits || digits > kMaxDigits) {
      throw Error(ErrorCode::precondition_violation,
                  "digits must lie in [15, 1000], got " + std::to_string(digits));
    }
    if (!(pole_guard >= 0.0) || !std::isfinite(pole_guard)) {
      throw Error(ErrorCode::precondition_violation, "pole_guard must be finite and >= 0");
    }
  }

  mpfr_prec_t bits() const { return bits_for_digits(digits); }

  /// Same pole guard, `extra` more decimal digits.
  PrecisionCtx widened(unsigned extra) const {
    PrecisionCtx w = *this;
    w.digits = digits + extra;
    return w;
  }

  static mpfr_prec_t bits_for_digits(unsigned d) {
    return static_cast<mpfr_prec_t>(std::ceil(d * 3.3219280948873623)) + 8;
  }
};

}  // namespace watson
