#include <gtest/gtest.h>

#include <random>

#include "watson/error.hpp"
#include "watson/lattice.hpp"

using namespace watson;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::parse_error;
}

Rational q(long p, long d = 1) { return make_rational(p, d); }

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}
  Rational grid(int lo, int hi) { return q(std::uniform_int_distribution<int>(lo, hi)(rng), 10000); }
  int index(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  // a, b in [0.1, 3]; c placed so f_{i,j}(a,b,c) has margin in [0.75, 3].
  WatsonPoint point(int i, int j) {
    const Rational a = grid(1000, 30000), b = grid(1000, 30000), s = grid(7500, 30000);
    const Rational c = s - j - Rational(i + 1, 2) + (a + b) / 2;
    return WatsonPoint{a, b, c, i, j};
  }
};

bool denominators_clear(const WatsonPoint& p) {
  const PFQ f = to_pfq(p);
  for (const Rational& d : f.denominators) {
    if (near_nonpositive_integer(d, 0.05)) return false;
  }
  return true;
}

}  // namespace

TEST(ToPfq, Examples) {
  const PFQ f00 = to_pfq({q(1), q(1), q(1), 0, 0});
  EXPECT_EQ(f00.numerators, (std::vector<Rational>{q(1), q(1), q(1)}));
  EXPECT_EQ(f00.denominators, (std::vector<Rational>{q(3, 2), q(2)}));
  EXPECT_EQ(f00.argument, q(1));
  EXPECT_EQ(to_pfq({q(1), q(1), q(1), 0, 1}).denominators, (std::vector<Rational>{q(3, 2), q(3)}));
  EXPECT_EQ(to_pfq({q(1, 2), q(1, 2), q(2), 0, -1}).denominators, (std::vector<Rational>{q(1), q(3)}));
}

TEST(Margin, Examples) {
  EXPECT_EQ(margin({q(1), q(1), q(1), 0, 0}), q(1, 2));
  EXPECT_EQ(margin({q(1), q(1), q(1), 0, 1}), q(3, 2));
}

TEST(Margin, ShiftInvariantAndMatchesSeriesMargin) {
  Sampler s(101);
  for (int k = 0; k < 100; ++k) {
    const WatsonPoint p = s.point(s.index(-5, 5), s.index(-3, 3));
    EXPECT_EQ(margin(shifted(p, 1)), margin(p));
    EXPECT_EQ(margin(shifted(p, 3)), margin(p));
    EXPECT_EQ(margin(p), convergence_margin(to_pfq(p)));
  }
}

TEST(EvalPoint, Examples) {
  const PrecisionCtx ctx(40);
  const mpfr_prec_t bits = ctx.bits();
  const EvalOptions opts = EvalOptions::for_context(ctx);

  const EvalResult zero = eval_point({q(-1), q(1), q(1), 0, 0}, ctx, opts);
  ASSERT_TRUE(zero.exact);
  EXPECT_EQ(*zero.exact, q(0));
  EXPECT_EQ(zero.method, EvalMethod::exact_rational);

  const XReal pi = XReal::pi(bits);
  EXPECT_LE(abs(eval_point({q(1), q(1), q(1), 0, 0}, ctx, opts).value - pi * pi / 4L), pow10_neg(38, bits));

  // (i,j) = (2,0) has no closed form, even with every form verified
  FormRegistry reg;
  for (ClosedFormId id : kAllClosedForms) reg.record(id, true, false, 100, "0", "test");
  const EvalResult off_row = eval_point({q(1), q(1), q(1), 2, 0}, ctx, opts, &reg);
  EXPECT_NE(off_row.method, EvalMethod::closed_form);
  const EvalResult direct = eval_unit(PFQ{{q(1), q(1), q(1)}, {q(5, 2), q(2)}, q(1)}, ctx, opts);
  EXPECT_TRUE(off_row.value == direct.value);

  EXPECT_EQ(code_of([&] { eval_point({q(2), q(2), q(1), 0, 0}, ctx, opts); }), ErrorCode::divergent_series);
}

TEST(EvalPoint, SymmetricInAB) {
  const PrecisionCtx ctx(30);
  const EvalOptions opts = EvalOptions::for_context(ctx);
  Sampler s(103);
  for (int k = 0; k < 40; ++k) {
    WatsonPoint p = s.point(s.index(-5, 5), s.index(-3, 3));
    if (!denominators_clear(p)) continue;
    WatsonPoint swapped = p;
    std::swap(swapped.a, swapped.b);
    const EvalResult x = eval_point(p, ctx, opts);
    const EvalResult y = eval_point(swapped, ctx, opts);
    EXPECT_LE(abs(x.value - y.value), x.abs_err_bound + y.abs_err_bound) << to_string(p);
  }
}

TEST(LinearForm, SkipsZeroCoefficientsAndTracksExactness) {
  const PrecisionCtx ctx(30);
  const EvalOptions opts = EvalOptions::for_context(ctx);
  LinearForm form(ctx.bits());
  // a divergent point behind a zero coefficient is never evaluated
  form.add_point(q(0), {q(2), q(2), q(1), 0, 0}, ctx, opts);
  form.add_point(q(3), {q(-1), q(1), q(1), 0, 1}, ctx, opts);
  const SideValue v = form.result();
  ASSERT_TRUE(v.exact);
  EXPECT_EQ(*v.exact, q(1));

  form.add_point(q(1), {q(1), q(1), q(1), 0, 0}, ctx, opts);
  EXPECT_FALSE(form.result().exact);
}

TEST(Recurrence, CoefficientExample) {
  EXPECT_EQ(recurrence_coefficient(q(1), q(1), q(1), 0, 0), q(1, 9));
  EXPECT_EQ(recurrence_coefficient(q(0), q(5, 3), q(7, 2), 1, -2), q(0));
}

TEST(Recurrence, ResidualExamples) {
  const PrecisionCtx ctx(40);
  const mpfr_prec_t bits = ctx.bits();
  const EvalOptions opts = EvalOptions::for_context(ctx);

  const RelationEntry unit = recurrence_residual({q(1), q(1), q(1), 0, 0}, ctx, opts);
  const XReal pi2 = XReal::pi(bits) * XReal::pi(bits);
  EXPECT_LE(abs(unit.lhs.value - (pi2 / 4L - 1L) * 2L), pow10_neg(36, bits));
  EXPECT_LE(abs(unit.rhs.value - (pi2 / 2L - 2L)), pow10_neg(36, bits));
  EXPECT_LE(unit.rel_residual, pow10_neg(35, bits));

  const RelationEntry term = recurrence_residual({q(-1), q(1), q(1), 0, 0}, ctx, opts);
  ASSERT_TRUE(term.exact);
  ASSERT_TRUE(term.lhs.exact);
  EXPECT_EQ(*term.lhs.exact, q(2, 3));
  EXPECT_EQ(*term.rhs.exact, q(2, 3));
  EXPECT_TRUE(term.abs_residual.is_zero());

  const RelationEntry a0 = recurrence_residual({q(0), q(7, 5), q(9, 4), 1, 2}, ctx, opts);
  ASSERT_TRUE(a0.exact);
  EXPECT_EQ(*a0.lhs.exact, q(9, 2) + 2);
  EXPECT_TRUE(a0.abs_residual.is_zero());

  EXPECT_EQ(code_of([&] { recurrence_residual({q(1), q(1), q(0), 0, 0}, ctx, opts); }),
            ErrorCode::precondition_violation);
}

TEST(Recurrence, RandomGridResidualsSmall) {
  const PrecisionCtx ctx(30);
  const EvalOptions opts = EvalOptions::for_context(ctx);
  const XReal limit = pow10_neg(10, ctx.bits());
  Sampler s(107);
  int checked = 0;
  for (int k = 0; k < 120; ++k) {
    const WatsonPoint p = s.point(s.index(-5, 5), s.index(-3, 3));
    try {
      const RelationEntry e = recurrence_residual(p, ctx, opts);
      ASSERT_TRUE(e.converged) << to_string(p);
      EXPECT_LE(e.rel_residual, limit) << to_string(p);
      ++checked;
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::precondition_violation || e.code() == ErrorCode::denominator_pole)
          << e.what();
    }
  }
  EXPECT_GE(checked, 100);
}

TEST(Recurrence, TerminatingInstancesExactlyZero) {
  const PrecisionCtx ctx(30);
  const EvalOptions opts = EvalOptions::for_context(ctx);
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<int> deg(0, 10), num(-40, 40), den(1, 7), ij(-3, 3);
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    // degree m in the a-slot; the shifted point terminates one step earlier
    const WatsonPoint p{q(-deg(rng)), q(num(rng), den(rng)), q(num(rng), den(rng)), ij(rng), ij(rng)};
    try {
      const RelationEntry e = recurrence_residual(p, ctx, opts);
      ASSERT_TRUE(e.exact) << to_string(p);
      EXPECT_EQ(*e.lhs.exact, *e.rhs.exact) << to_string(p);
      EXPECT_TRUE(e.abs_residual.is_zero());
      ++checked;
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::precondition_violation || e.code() == ErrorCode::denominator_pole)
          << e.what();
    }
  }
  EXPECT_GE(checked, 100);
}

TEST(ThreeTerm, PrintedExamples) {
  const PrecisionCtx ctx(30);
  const EvalOptions opts = EvalOptions::for_context(ctx);
  const RelationEntry refute = three_term_printed({q(0), q(1), q(2), 0, 0}, ctx, opts);
  ASSERT_TRUE(refute.exact);
  EXPECT_EQ(*refute.lhs.exact, q(1));
  EXPECT_EQ(*refute.rhs.exact, q(2));

  const RelationEntry coincide = three_term_printed({q(0), q(1), q(1), 0, 0}, ctx, opts);
  ASSERT_TRUE(coincide.exact);
  EXPECT_EQ(*coincide.lhs.exact, *coincide.rhs.exact);

  // a = 0: RHS − LHS = (2c+j) − 2bc/(b+i+1) − 1
  const Rational b(3, 7), c(5, 4);
  const int i = 1, j = 2;
  const RelationEntry generic = three_term_printed({q(0), b, c, i, j}, ctx, opts);
  ASSERT_TRUE(generic.exact);
  EXPECT_EQ(*generic.rhs.exact - *generic.lhs.exact, (2 * c + j) - 2 * b * c / (b + i + 1) - 1);
}

TEST(ThreeTerm, CorrectedExamples) {
  const PrecisionCtx ctx(30);
  const EvalOptions opts = EvalOptions::for_context(ctx);
  const RelationEntry probe = three_term_corrected({q(0), q(1), q(2), 0, 0}, ctx, opts);
  ASSERT_TRUE(probe.exact);
  EXPECT_EQ(*probe.lhs.exact, q(1));
  EXPECT_EQ(*probe.rhs.exact, q(1));

  const RelationEntry generic = three_term_corrected({q(0), q(3, 7), q(5, 4), 1, 2}, ctx, opts);
  ASSERT_TRUE(generic.exact);
  EXPECT_EQ(*generic.rhs.exact, q(1));

  const RelationEntry unit = three_term_corrected({q(1), q(1), q(1), 0, 1}, ctx, opts);
  EXPECT_TRUE(unit.converged);
  EXPECT_LE(unit.rel_residual, pow10_neg(28, ctx.bits()));
}

TEST(ThreeTerm, CorrectedHoldsOnRandomSamples) {
  const PrecisionCtx ctx(30);
  const EvalOptions opts = EvalOptions::for_context(ctx);
  Sampler s(113);
  int checked = 0;
  for (int k = 0; k < 120; ++k) {
    // the tightest point is f_{i+1,j-1}(a,b+1,c+1), whose margin equals f_{i,j}'s
    const WatsonPoint p = s.point(s.index(-5, 4), s.index(-2, 3));
    try {
      const RelationEntry e = three_term_corrected(p, ctx, opts);
      EXPECT_LE(e.rel_residual, pow10_neg(10, ctx.bits())) << to_string(p);
      ++checked;
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::precondition_violation || e.code() == ErrorCode::denominator_pole ||
                  e.code() == ErrorCode::divergent_series)
          << e.what();
    }
  }
  EXPECT_GE(checked, 100);
}

TEST(Reduce, Examples) {
  const PrecisionCtx ctx(40);
  const mpfr_prec_t bits = ctx.bits();
  const EvalOptions opts = EvalOptions::for_context(ctx);
  const XReal pi2 = XReal::pi(bits) * XReal::pi(bits);

  const ReductionPlan zero = reduce_to_watson({q(1), q(1), q(1), 0, 0}, ctx, opts);
  ASSERT_EQ(zero.terms.size(), 1u);
  EXPECT_EQ(zero.terms[0].weight, q(1));

  const ReductionPlan one = reduce_to_watson({q(1), q(1), q(1), 0, 1}, ctx, opts);
  ASSERT_EQ(one.terms.size(), 2u);
  EXPECT_EQ(one.terms[0].shift, 0);
  EXPECT_EQ(one.terms[0].weight, q(1));
  EXPECT_EQ(one.terms[1].shift, 1);
  EXPECT_EQ(one.terms[1].weight, q(-1, 9));
  EXPECT_LE(abs(one.value - (pi2 / 4L - 1L)), pow10_neg(38, bits));
  EXPECT_LE(one.residual, pow10_neg(36, bits));

  const ReductionPlan two = reduce_to_watson({q(3, 10), q(7, 5), q(6, 5), 0, 2}, ctx, opts);
  EXPECT_EQ(two.terms.size(), 3u);

  EXPECT_EQ(code_of([&] { reduce_to_watson({q(1), q(1), q(1), 0, -1}, ctx, opts); }), ErrorCode::unsupported_index);
  EXPECT_EQ(code_of([&] { reduce_to_watson({q(1), q(1), q(1), 1, 0}, ctx, opts); }), ErrorCode::unsupported_index);
  EXPECT_EQ(code_of([&] { reduce_to_watson({q(3), q(3), q(1), 0, 2}, ctx, opts); }),
            ErrorCode::precondition_violation);
}

TEST(Reduce, AgreesWithSeriesAcrossRows) {
  const PrecisionCtx ctx(30);
  const EvalOptions opts = EvalOptions::for_context(ctx);
  Sampler s(127);
  for (int j = 0; j <= 6; ++j) {
    int checked = 0;
    for (int k = 0; k < 50; ++k) {
      const WatsonPoint base = s.point(0, 0);
      const WatsonPoint p{base.a, base.b, base.c, 0, j};
      try {
        const ReductionPlan plan = reduce_to_watson(p, ctx, opts);
        EXPECT_LE(plan.terms.size(), static_cast<std::size_t>(j + 1));
        EXPECT_LE(plan.residual, plan.abs_err_bound + plan.series.abs_err_bound) << to_string(p);
        ++checked;
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::precondition_violation) << e.what();
      }
    }
    EXPECT_GE(checked, 40) << "j=" << j;
  }
}
