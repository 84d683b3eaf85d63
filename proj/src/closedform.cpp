#include "watson/closedform.hpp"

#include <mutex>

#include "watson/error.hpp"
#include "watson/gamma.hpp"

namespace watson {

namespace {

const Rational kHalf(1, 2);

struct FormValue {
  XReal value;
  XReal magnitude;  // sum of |pieces| before cancellation, for the rounding bound
  bool exact_zero = false;
};

void require_region(const Rational& quantity, int printed_bound, const char* what) {
  if (quantity < Rational(printed_bound) + Rational(kValidityMargin)) {
    throw Error(ErrorCode::divergence_region,
                std::string(what) + " = " + to_decimal_string(quantity) + " must exceed " +
                    std::to_string(printed_bound) + " by at least 0.05");
  }
}

void require_regular(const Rational& a, const Rational& b, const PrecisionCtx& ctx) {
  for (const Rational* p : {&a, &b}) {
    if (near_nonpositive_integer(*p, ctx.pole_guard)) {
      throw Error(ErrorCode::parameter_pole,
                  "parameter " + to_decimal_string(*p) + " is at a pole of the 1/(Γ(a)Γ(b)) prefactor");
    }
  }
}

std::vector<XReal> to_reals(const std::vector<Rational>& args, mpfr_prec_t bits) {
  std::vector<XReal> out;
  out.reserve(args.size());
  for (const auto& q : args) out.emplace_back(q, bits);
  return out;
}

// Γ-quotient at the given rational arguments; zero flagged, numerator poles thrown.
FormValue quotient(const std::vector<Rational>& num, const std::vector<Rational>& den,
                   const PrecisionCtx& ctx) {
  const auto n = to_reals(num, ctx.bits());
  const auto d = to_reals(den, ctx.bits());
  GammaProduct g = gamma_product(n, d, ctx);
  switch (g.status) {
    case GammaProductStatus::zero:
      return FormValue{XReal(ctx.bits()), XReal(ctx.bits()), true};
    case GammaProductStatus::numerator_pole:
      throw Error(ErrorCode::numerator_pole, "a numerator gamma sits on a pole");
    case GammaProductStatus::value:
      break;
  }
  XReal m = abs(g.value);
  return FormValue{std::move(g.value), std::move(m), false};
}

template <typename... Lists>
std::vector<Rational> concat(const Lists&... lists) {
  std::vector<Rational> out;
  (out.insert(out.end(), lists.begin(), lists.end()), ...);
  return out;
}

struct LavoieShape {
  std::vector<Rational> prefactor_num, prefactor_den;
  std::vector<Rational> first_num, first_den;
  std::vector<Rational> second_num, second_den;
};

LavoieShape lavoie_plus_shape(const Rational& a, const Rational& b, const Rational& c) {
  return LavoieShape{
      {c + kHalf, (a + b + 1) / 2, c - (a + b) / 2 + kHalf},
      {kHalf, a, b},
      {a / 2, b / 2},
      {c - a / 2 + kHalf, c - b / 2 + kHalf},
      {(a + 1) / 2, (b + 1) / 2},
      {c - a / 2 + 1, c - b / 2 + 1},
  };
}

LavoieShape lavoie_minus_shape(const Rational& a, const Rational& b, const Rational& c) {
  return LavoieShape{
      {c - kHalf, (a + b + 1) / 2, c - (a + b) / 2 - kHalf},
      {kHalf, a, b},
      {a / 2, b / 2},
      {c - a / 2 - kHalf, c - b / 2 - kHalf},
      {(a + 1) / 2, (b + 1) / 2},
      {c - a / 2, c - b / 2},
  };
}

// 2^(a+b-2) * prefactor * {first - second}
FormValue lavoie_value(const LavoieShape& s, const Rational& a, const Rational& b, const PrecisionCtx& ctx) {
  const PrecisionCtx work = ctx.widened(10);
  FormValue first = quotient(concat(s.prefactor_num, s.first_num), concat(s.prefactor_den, s.first_den), work);
  FormValue second =
      quotient(concat(s.prefactor_num, s.second_num), concat(s.prefactor_den, s.second_den), work);
  XReal scale = exp2(XReal(Rational(a + b - 2), work.bits()));
  XReal value = (first.value - second.value) * scale;
  XReal magnitude = (first.magnitude + second.magnitude) * scale;
  bool zero = first.exact_zero && second.exact_zero;
  return FormValue{XReal(value, ctx.bits()), XReal(magnitude, ctx.bits()), zero};
}

std::vector<Rational> watson_num(const Rational& a, const Rational& b, const Rational& c) {
  return {kHalf, c + kHalf, (a + b + 1) / 2, c - (a + b) / 2 + kHalf};
}

std::vector<Rational> watson_den(const Rational& a, const Rational& b, const Rational& c) {
  return {(a + 1) / 2, (b + 1) / 2, c - a / 2 + kHalf, c - b / 2 + kHalf};
}

FormValue evaluate(ClosedFormId id, const Rational& a, const Rational& b, const Rational& c,
                   const PrecisionCtx& ctx) {
  switch (id) {
    case ClosedFormId::gauss:
      require_region(c - a - b, 0, "c - a - b");
      return quotient({c, c - a - b}, {c - a, c - b}, ctx);
    case ClosedFormId::watson_00:
      require_region(2 * c - a - b, -1, "2c - a - b");
      return quotient(watson_num(a, b, c), watson_den(a, b, c), ctx);
    case ClosedFormId::lavoie_plus:
      require_region(2 * c - a - b, -3, "2c - a - b");
      require_regular(a, b, ctx);
      return lavoie_value(lavoie_plus_shape(a, b, c), a, b, ctx);
    case ClosedFormId::lavoie_minus:
      require_region(2 * c - a - b, 1, "2c - a - b");
      require_regular(a, b, ctx);
      return lavoie_value(lavoie_minus_shape(a, b, c), a, b, ctx);
  }
  throw Error(ErrorCode::unknown_id, "closed form");
}

}  // namespace

std::string_view to_string(ClosedFormId id) noexcept {
  switch (id) {
    case ClosedFormId::gauss: return "gauss";
    case ClosedFormId::watson_00: return "watson_00";
    case ClosedFormId::lavoie_plus: return "lavoie_plus";
    case ClosedFormId::lavoie_minus: return "lavoie_minus";
  }
  return "unknown";
}

ClosedFormId parse_closed_form_id(std::string_view text) {
  for (ClosedFormId id : kAllClosedForms) {
    if (to_string(id) == text) return id;
  }
  throw Error(ErrorCode::unknown_id, "no closed form named '" + std::string(text) + "'");
}

std::string_view closed_form_source(ClosedFormId id) noexcept {
  switch (id) {
    case ClosedFormId::gauss: return "Gauss sum of 2F1(a,b;c;1)";
    case ClosedFormId::watson_00: return "Watson sum of 3F2(a,b,c;(a+b+1)/2,2c;1)";
    case ClosedFormId::lavoie_plus: return "Lavoie sum of 3F2(a,b,c;(a+b+1)/2,2c+1;1)";
    case ClosedFormId::lavoie_minus: return "Lavoie sum of 3F2(a,b,c;(a+b+1)/2,2c-1;1)";
  }
  return "";
}

XReal gauss_2f1_unit(const Rational& a, const Rational& b, const Rational& c, const PrecisionCtx& ctx) {
  return evaluate(ClosedFormId::gauss, a, b, c, ctx).value;
}

XReal watson_00(const Rational& a, const Rational& b, const Rational& c, const PrecisionCtx& ctx) {
  return evaluate(ClosedFormId::watson_00, a, b, c, ctx).value;
}

XReal lavoie_plus(const Rational& a, const Rational& b, const Rational& c, const PrecisionCtx& ctx) {
  return evaluate(ClosedFormId::lavoie_plus, a, b, c, ctx).value;
}

XReal lavoie_minus(const Rational& a, const Rational& b, const Rational& c, const PrecisionCtx& ctx) {
  return evaluate(ClosedFormId::lavoie_minus, a, b, c, ctx).value;
}

EvalResult eval_closed_form(ClosedFormId id, const Rational& a, const Rational& b, const Rational& c,
                            const PrecisionCtx& ctx) {
  FormValue v = evaluate(id, a, b, c, ctx);
  EvalResult r;
  r.method = EvalMethod::closed_form;
  r.converged = true;
  r.terms_used = 0;
  if (v.exact_zero) {
    r.value = XReal(ctx.bits());
    r.abs_err_bound = XReal(ctx.bits());
    r.exact = Rational(0);
    return r;
  }
  // log-gammas carry 32 guard bits; what remains is the final rounding plus
  // the cancellation in Lavoie's brace.
  r.abs_err_bound = v.magnitude * exp2(XReal(-static_cast<long>(ctx.bits()) + 3L, ctx.bits()));
  r.value = std::move(v.value);
  return r;
}

std::vector<Rational> closed_form_gamma_arguments(ClosedFormId id, const Rational& a,
                                                  const Rational& b, const Rational& c) {
  switch (id) {
    case ClosedFormId::gauss:
      return {c, c - a - b, c - a, c - b};
    case ClosedFormId::watson_00:
      return concat(watson_num(a, b, c), watson_den(a, b, c));
    case ClosedFormId::lavoie_plus:
    case ClosedFormId::lavoie_minus: {
      LavoieShape s = id == ClosedFormId::lavoie_plus ? lavoie_plus_shape(a, b, c)
                                                       : lavoie_minus_shape(a, b, c);
      return concat(s.prefactor_num, s.prefactor_den, s.first_num, s.first_den, s.second_num,
                    s.second_den);
    }
  }
  return {};
}

std::string_view to_string(FormStatus status) noexcept {
  switch (status) {
    case FormStatus::unverified: return "unverified";
    case FormStatus::verified: return "verified";
    case FormStatus::refuted: return "refuted";
  }
  return "unknown";
}

FormRegistry::FormRegistry() {
  for (ClosedFormId id : kAllClosedForms) table_[id] = FormVerdict{id, FormStatus::unverified, {}, 0, ""};
}

FormVerdict FormRegistry::verdict(ClosedFormId id) const {
  std::shared_lock lock(mutex_);
  return table_.at(id);
}

FormStatus FormRegistry::status(ClosedFormId id) const {
  std::shared_lock lock(mutex_);
  return table_.at(id).status;
}

void FormRegistry::record(ClosedFormId id, bool identity, bool refuted, std::size_t counted_samples,
                          const std::string& worst_residual, const std::string& evidence) {
  std::unique_lock lock(mutex_);
  FormVerdict& v = table_.at(id);
  if (refuted) {
    v.status = FormStatus::refuted;
  } else if (identity && counted_samples >= kVerifySampleMinimum) {
    v.status = FormStatus::verified;
  } else {
    v.status = FormStatus::unverified;
  }
  v.sample_count = counted_samples;
  v.worst_residual = worst_residual;
  v.evidence.push_back(evidence);
}

std::vector<FormVerdict> FormRegistry::snapshot() const {
  std::shared_lock lock(mutex_);
  std::vector<FormVerdict> out;
  for (ClosedFormId id : kAllClosedForms) out.push_back(table_.at(id));
  return out;
}

FormVerdict registry_verdict(const FormRegistry& registry, std::string_view id) {
  return registry.verdict(parse_closed_form_id(id));
}

}  // namespace watson
