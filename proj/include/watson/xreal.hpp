#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <mpfr.h>

#include "watson/rational.hpp"

namespace watson {

/// Extended-precision binary floating-point real, a value type over mpfr_t.
///
/// Every value carries its own mantissa width. Binary operations produce a
/// result at the wider of the two operand precisions, rounded to nearest.
class XReal {
 public:
  XReal() : XReal(static_cast<mpfr_prec_t>(64)) {}
  explicit XReal(mpfr_prec_t bits);
  XReal(long value, mpfr_prec_t bits);
  XReal(int value, mpfr_prec_t bits) : XReal(static_cast<long>(value), bits) {}
  XReal(double value, mpfr_prec_t bits);
  XReal(const Rational& value, mpfr_prec_t bits);
  XReal(const XReal& other, mpfr_prec_t bits);

  XReal(const XReal& other);
  XReal(XReal&& other) noexcept;
  XReal& operator=(const XReal& other);
  XReal& operator=(XReal&& other) noexcept;
  ~XReal();

  /// Decimal (or "inf"/"nan") text. Throws Error(parse_error) when malformed.
  static XReal parse(std::string_view text, mpfr_prec_t bits);
  static XReal pi(mpfr_prec_t bits);
  static XReal zero(mpfr_prec_t bits) { return XReal(bits); }
  static XReal one(mpfr_prec_t bits) { return XReal(1L, bits); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Binary exponent e with |x| in [2^(e-1), 2^e); undefined for zero.
  long exponent2() const { return mpfr_get_exp(v_); }

  /// Scientific/fixed decimal text with `significant` digits; 0 selects the
  /// smallest count that round-trips at this precision.
  std::string to_string(std::size_t significant = 0) const;

  XReal& operator+=(const XReal& rhs);
  XReal& operator-=(const XReal& rhs);
  XReal& operator*=(const XReal& rhs);
  XReal& operator/=(const XReal& rhs);
  XReal& operator+=(long rhs);
  XReal& operator-=(long rhs);
  XReal& operator*=(long rhs);
  XReal& operator/=(long rhs);
  XReal& operator+=(const Rational& rhs);
  XReal& operator*=(const Rational& rhs);

  XReal operator-() const;

  friend XReal operator+(XReal lhs, const XReal& rhs) { return lhs += rhs; }
  friend XReal operator-(XReal lhs, const XReal& rhs) { return lhs -= rhs; }
  friend XReal operator*(XReal lhs, const XReal& rhs) { return lhs *= rhs; }
  friend XReal operator/(XReal lhs, const XReal& rhs) { return lhs /= rhs; }
  friend XReal operator+(XReal lhs, long rhs) { return lhs += rhs; }
  friend XReal operator-(XReal lhs, long rhs) { return lhs -= rhs; }
  friend XReal operator*(XReal lhs, long rhs) { return lhs *= rhs; }
  friend XReal operator/(XReal lhs, long rhs) { return lhs /= rhs; }
  friend XReal operator*(XReal lhs, const Rational& rhs) { return lhs *= rhs; }
  friend XReal operator+(XReal lhs, const Rational& rhs) { return lhs += rhs; }

  friend bool operator==(const XReal& a, const XReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const XReal& a, const XReal& b);
  friend std::partial_ordering operator<=>(const XReal& a, double b);
  friend bool operator==(const XReal& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }

 private:
  void widen_to(mpfr_prec_t bits);
  mpfr_t v_;
};

XReal abs(XReal x);
XReal sqrt(XReal x);
XReal log(XReal x);
XReal exp(XReal x);
XReal sin(XReal x);
/// Nearest integer (ties away from zero).
XReal round(XReal x);
XReal pow(XReal x, long n);
/// 2^x
XReal exp2(XReal x);
XReal max(const XReal& a, const XReal& b);
/// 10^(-k) at the given precision.
XReal pow10_neg(long k, mpfr_prec_t bits);

}  // namespace watson
