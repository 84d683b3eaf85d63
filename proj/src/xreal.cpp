#include "watson/xreal.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "watson/error.hpp"

namespace watson {

XReal::XReal(mpfr_prec_t bits) {
  mpfr_init2(v_, std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN));
  mpfr_set_zero(v_, 1);
}

XReal::XReal(long value, mpfr_prec_t bits) : XReal(bits) {
  mpfr_set_si(v_, value, MPFR_RNDN);
}

XReal::XReal(double value, mpfr_prec_t bits) : XReal(bits) {
  mpfr_set_d(v_, value, MPFR_RNDN);
}

XReal::XReal(const Rational& value, mpfr_prec_t bits) : XReal(bits) {
  mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

XReal::XReal(const XReal& other, mpfr_prec_t bits) : XReal(bits) {
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

XReal::XReal(const XReal& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

XReal::XReal(XReal&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

XReal& XReal::operator=(const XReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

XReal& XReal::operator=(XReal&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

XReal::~XReal() { mpfr_clear(v_); }

XReal XReal::parse(std::string_view text, mpfr_prec_t bits) {
  XReal x(bits);
  std::string s(text);
  if (s.empty() || mpfr_set_str(x.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw Error(ErrorCode::parse_error, "not a real number: '" + s + "'");
  }
  return x;
}

XReal XReal::pi(mpfr_prec_t bits) {
  XReal x(bits);
  mpfr_const_pi(x.v_, MPFR_RNDN);
  return x;
}

std::string XReal::to_string(std::size_t significant) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0";

  std::size_t n = significant != 0 ? significant : mpfr_get_str_ndigits(10, precision());
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, n, v_, MPFR_RNDN);
  std::string mantissa(raw);
  mpfr_free_str(raw);

  bool negative = mantissa.front() == '-';
  if (negative) mantissa.erase(0, 1);
  while (mantissa.size() > 1 && mantissa.back() == '0') mantissa.pop_back();

  // value = 0.mantissa * 10^exp10
  long point = static_cast<long>(exp10);
  std::string out;
  if (point > -5 && point <= 21) {
    if (point <= 0) {
      out = "0." + std::string(static_cast<std::size_t>(-point), '0') + mantissa;
    } else if (static_cast<std::size_t>(point) >= mantissa.size()) {
      out = mantissa + std::string(static_cast<std::size_t>(point) - mantissa.size(), '0');
    } else {
      out = mantissa.substr(0, static_cast<std::size_t>(point)) + "." +
            mantissa.substr(static_cast<std::size_t>(point));
    }
  } else {
    out = mantissa.substr(0, 1);
    if (mantissa.size() > 1) out += "." + mantissa.substr(1);
    out += "e" + std::to_string(point - 1);
  }
  return negative ? "-" + out : out;
}

void XReal::widen_to(mpfr_prec_t bits) {
  if (bits > precision()) mpfr_prec_round(v_, bits, MPFR_RNDN);
}

XReal& XReal::operator+=(const XReal& rhs) {
  widen_to(rhs.precision());
  mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

XReal& XReal::operator-=(const XReal& rhs) {
  widen_to(rhs.precision());
  mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

XReal& XReal::operator*=(const XReal& rhs) {
  widen_to(rhs.precision());
  mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

XReal& XReal::operator/=(const XReal& rhs) {
  widen_to(rhs.precision());
  mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

XReal& XReal::operator+=(long rhs) {
  mpfr_add_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

XReal& XReal::operator-=(long rhs) {
  mpfr_sub_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

XReal& XReal::operator*=(long rhs) {
  mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

XReal& XReal::operator/=(long rhs) {
  mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

XReal& XReal::operator+=(const Rational& rhs) {
  mpfr_add_q(v_, v_, rhs.get_mpq_t(), MPFR_RNDN);
  return *this;
}

XReal& XReal::operator*=(const Rational& rhs) {
  mpfr_mul_q(v_, v_, rhs.get_mpq_t(), MPFR_RNDN);
  return *this;
}

XReal XReal::operator-() const {
  XReal r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const XReal& a, const XReal& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const XReal& a, double b) {
  if (mpfr_nan_p(a.get()) || b != b) return std::partial_ordering::unordered;
  int c = mpfr_cmp_d(a.v_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

XReal abs(XReal x) {
  mpfr_abs(x.get(), x.get(), MPFR_RNDN);
  return x;
}

XReal sqrt(XReal x) {
  mpfr_sqrt(x.get(), x.get(), MPFR_RNDN);
  return x;
}

XReal log(XReal x) {
  mpfr_log(x.get(), x.get(), MPFR_RNDN);
  return x;
}

XReal exp(XReal x) {
  mpfr_exp(x.get(), x.get(), MPFR_RNDN);
  return x;
}

XReal sin(XReal x) {
  mpfr_sin(x.get(), x.get(), MPFR_RNDN);
  return x;
}

XReal round(XReal x) {
  mpfr_round(x.get(), x.get());
  return x;
}

XReal pow(XReal x, long n) {
  mpfr_pow_si(x.get(), x.get(), n, MPFR_RNDN);
  return x;
}

XReal exp2(XReal x) {
  mpfr_exp2(x.get(), x.get(), MPFR_RNDN);
  return x;
}

XReal max(const XReal& a, const XReal& b) {
  return a < b ? b : a;
}

XReal pow10_neg(long k, mpfr_prec_t bits) {
  XReal x(10L, bits);
  mpfr_pow_si(x.get(), x.get(), -k, MPFR_RNDN);
  return x;
}

}  // namespace watson
