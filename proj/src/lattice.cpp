#include "watson/lattice.hpp"

#include <map>

#include "watson/error.hpp"

namespace watson {

namespace {

void require_nonzero(const Rational& factor, const char* name, const PrecisionCtx& ctx) {
  if (near_zero(factor, ctx.pole_guard)) {
    throw Error(ErrorCode::precondition_violation,
                std::string(name) + " = " + to_decimal_string(factor) + " is within pole_guard of 0");
  }
}

WatsonPoint at(const Rational& a, const Rational& b, const Rational& c, int i, int j) {
  return WatsonPoint{a, b, c, i, j};
}

std::optional<ClosedFormId> fast_path_form(const WatsonPoint& p) {
  if (p.i != 0) return std::nullopt;
  switch (p.j) {
    case 0: return ClosedFormId::watson_00;
    case 1: return ClosedFormId::lavoie_plus;
    case -1: return ClosedFormId::lavoie_minus;
    default: return std::nullopt;
  }
}

}  // namespace

std::string to_string(const WatsonPoint& p) {
  return "(" + to_decimal_string(p.a) + ", " + to_decimal_string(p.b) + ", " + to_decimal_string(p.c) +
         "; " + std::to_string(p.i) + ", " + std::to_string(p.j) + ")";
}

PFQ to_pfq(const WatsonPoint& p) {
  return PFQ{{p.a, p.b, p.c}, {(p.a + p.b + p.i + 1) / 2, 2 * p.c + p.j}, Rational(1)};
}

Rational margin(const WatsonPoint& p) {
  return p.c + p.j + Rational(p.i + 1, 2) - (p.a + p.b) / 2;
}

WatsonPoint shifted(const WatsonPoint& p, long k) {
  return WatsonPoint{p.a + k, p.b + k, p.c + k, p.i, p.j};
}

namespace {

// A gamma argument inside the guard but off the integers would be read as a
// pole by the closed form; only exact poles are safe to take from it.
bool gammas_resolved(ClosedFormId id, const WatsonPoint& p, const PrecisionCtx& ctx) {
  for (const Rational& q : closed_form_gamma_arguments(id, p.a, p.b, p.c)) {
    if (near_nonpositive_integer(q, ctx.pole_guard) && !is_nonpositive_integer(q)) return false;
  }
  return true;
}

}  // namespace

EvalResult eval_point(const WatsonPoint& p, const PrecisionCtx& ctx, const EvalOptions& opts,
                      const FormRegistry* registry) {
  const PFQ f = to_pfq(p);
  if (registry != nullptr && !termination_degree(f)) {
    auto id = fast_path_form(p);
    if (id && registry->status(*id) == FormStatus::verified && gammas_resolved(*id, p, ctx)) {
      try {
        return eval_closed_form(*id, p.a, p.b, p.c, ctx);
      } catch (const Error&) {
        // preconditions or a pole: the series covers it
      }
    }
  }
  return eval_unit(f, ctx, opts);
}

LinearForm::LinearForm(mpfr_prec_t bits) : value_(bits), bound_(bits) {}

void LinearForm::add(const Rational& coefficient, const EvalResult& term) {
  if (coefficient == 0) return;
  const mpfr_prec_t bits = value_.precision();
  XReal contribution = XReal(term.value, bits) * coefficient;
  value_ += contribution;
  bound_ += abs(XReal(term.abs_err_bound, bits) * coefficient);
  // rounding of the product and the running sum
  bound_ += abs(contribution) * exp2(XReal(-static_cast<long>(bits) + 2L, bits));
  converged_ = converged_ && term.converged;
  if (exact_ && term.exact) {
    *exact_ += coefficient * *term.exact;
  } else {
    exact_.reset();
  }
}

void LinearForm::add_point(const Rational& coefficient, const WatsonPoint& p, const PrecisionCtx& ctx,
                           const EvalOptions& opts, const FormRegistry* registry) {
  if (coefficient == 0) return;
  add(coefficient, eval_point(p, ctx, opts, registry));
}

void LinearForm::add_constant(const XReal& value, const XReal& abs_err_bound) {
  const mpfr_prec_t bits = value_.precision();
  value_ += XReal(value, bits);
  bound_ += XReal(abs_err_bound, bits);
  exact_.reset();
}

SideValue LinearForm::result() const {
  SideValue s{value_, bound_, converged_, exact_};
  if (exact_) {
    s.value = XReal(*exact_, value_.precision());
    s.abs_err_bound = XReal(value_.precision());
  }
  return s;
}

RelationEntry compare_sides(SideValue lhs, SideValue rhs, mpfr_prec_t bits) {
  RelationEntry e;
  e.converged = lhs.converged && rhs.converged;
  e.exact = lhs.exact.has_value() && rhs.exact.has_value();
  if (e.exact) {
    Rational diff = *lhs.exact - *rhs.exact;
    e.abs_residual = abs(XReal(diff, bits));
  } else {
    e.abs_residual = abs(XReal(lhs.value, bits) - XReal(rhs.value, bits));
  }
  XReal scale = max(max(abs(XReal(lhs.value, bits)), abs(XReal(rhs.value, bits))), XReal::one(bits));
  e.rel_residual = e.abs_residual / scale;
  e.rel_bound = (XReal(lhs.abs_err_bound, bits) + XReal(rhs.abs_err_bound, bits)) / scale;
  e.lhs = std::move(lhs);
  e.rhs = std::move(rhs);
  return e;
}

Rational recurrence_coefficient(const Rational& a, const Rational& b, const Rational& c, int i, int j) {
  Rational k = 2 * a * b * c / ((a + b + i + 1) * (2 * c + j) * (2 * c + j + 1));
  k.canonicalize();
  return k;
}

RelationEntry recurrence_residual(const WatsonPoint& p, const PrecisionCtx& ctx, const EvalOptions& opts) {
  const auto& [a, b, c, i, j] = p;
  const Rational first = a + b + i + 1;
  const Rational second = 2 * c + j;
  require_nonzero(first, "a+b+i+1", ctx);
  require_nonzero(second, "2c+j", ctx);
  require_nonzero(second + 1, "2c+j+1", ctx);

  LinearForm lhs(ctx.bits());
  lhs.add_point(second, at(a, b, c, i, j + 1), ctx, opts);

  Rational coupling = 2 * a * b * c / (first * (second + 1));
  coupling.canonicalize();
  LinearForm rhs(ctx.bits());
  rhs.add_point(second, p, ctx, opts);
  rhs.add_point(-coupling, shifted(p, 1), ctx, opts);
  return compare_sides(lhs.result(), rhs.result(), ctx.bits());
}

RelationEntry three_term_printed(const WatsonPoint& p, const PrecisionCtx& ctx, const EvalOptions& opts) {
  const auto& [a, b, c, i, j] = p;
  const Rational first = a + b + i + 1;
  const Rational second = 2 * c + j;
  require_nonzero(first, "a+b+i+1", ctx);
  require_nonzero(second, "2c+j", ctx);

  LinearForm lhs(ctx.bits());
  lhs.add_point(Rational(1), p, ctx, opts);

  Rational coupling = 2 * a * b / (first * second);
  coupling.canonicalize();
  LinearForm rhs(ctx.bits());
  rhs.add_point(second, at(a - 1, b, c, i + 1, j), ctx, opts);
  rhs.add_point(-coupling, at(a, b + 1, c + 1, i + 1, j - 1), ctx, opts);
  return compare_sides(lhs.result(), rhs.result(), ctx.bits());
}

RelationEntry three_term_corrected(const WatsonPoint& p, const PrecisionCtx& ctx, const EvalOptions& opts) {
  const auto& [a, b, c, i, j] = p;
  const Rational first = a + b + i + 1;
  const Rational second = 2 * c + j;
  require_nonzero(first, "a+b+i+1", ctx);
  require_nonzero(second, "2c+j", ctx);

  LinearForm lhs(ctx.bits());
  lhs.add_point(Rational(1), p, ctx, opts);

  Rational coupling = 2 * b * c / (first * second);
  coupling.canonicalize();
  LinearForm rhs(ctx.bits());
  rhs.add_point(Rational(1), at(a - 1, b, c, i + 1, j), ctx, opts);
  rhs.add_point(coupling, at(a, b + 1, c + 1, i + 1, j - 1), ctx, opts);
  return compare_sides(lhs.result(), rhs.result(), ctx.bits());
}

ReductionPlan reduce_to_watson(const WatsonPoint& target, const PrecisionCtx& ctx, const EvalOptions& opts) {
  if (target.i != 0 || target.j < 0) {
    throw Error(ErrorCode::unsupported_index,
                "reduction needs i = 0 and j >= 0, got " + to_string(target));
  }
  const auto& [a, b, c, i, j] = target;
  if (2 * c - a - b < Rational(-1) + Rational(kValidityMargin)) {
    throw Error(ErrorCode::precondition_violation,
                "base row diverges: 2c - a - b = " + to_decimal_string(2 * c - a - b));
  }

  // weights[k] for the current row j'; start at f_{0,j} itself.
  std::map<long, Rational> weights{{0, Rational(1)}};
  for (int row = j; row > 0; --row) {
    std::map<long, Rational> next;
    for (const auto& [k, w] : weights) {
      const Rational ak = a + k, bk = b + k, ck = c + k;
      require_nonzero(ak + bk + 1, "a+b+1 at a shift", ctx);
      require_nonzero(2 * ck + row - 1, "2c+j at a shift", ctx);
      require_nonzero(2 * ck + row, "2c+j+1 at a shift", ctx);
      next[k] += w;
      next[k + 1] -= w * recurrence_coefficient(ak, bk, ck, 0, row - 1);
    }
    weights = std::move(next);
  }

  ReductionPlan plan;
  plan.target = target;
  LinearForm total(ctx.bits());
  for (auto& [k, w] : weights) {
    w.canonicalize();
    if (w == 0) continue;
    if (!gammas_resolved(ClosedFormId::watson_00, shifted(target, k), ctx)) {
      throw Error(ErrorCode::precondition_violation,
                  "watson_00 gamma argument inside the pole guard at shift " + std::to_string(k));
    }
    EvalResult base;
    try {
      base = eval_closed_form(ClosedFormId::watson_00, a + k, b + k, c + k, ctx);
    } catch (const Error& e) {
      throw Error(ErrorCode::precondition_violation,
                  "watson_00 unavailable at shift " + std::to_string(k) + ": " + e.what());
    }
    total.add(w, base);
    plan.terms.push_back(ReductionTerm{k, w, std::move(base)});
  }
  SideValue v = total.result();
  plan.value = std::move(v.value);
  plan.abs_err_bound = std::move(v.abs_err_bound);

  plan.series = eval_unit(to_pfq(target), ctx, opts);
  plan.residual = abs(XReal(plan.value, ctx.bits()) - XReal(plan.series.value, ctx.bits()));
  return plan;
}

}  // namespace watson
