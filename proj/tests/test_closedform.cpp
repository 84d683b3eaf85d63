#include <gtest/gtest.h>

#include <random>

#include "watson/closedform.hpp"
#include "watson/error.hpp"
#include "watson/lattice.hpp"
#include "watson/series.hpp"

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

XReal rel_diff(const XReal& x, const XReal& y) {
  const XReal scale = max(max(abs(x), abs(y)), XReal::one(x.precision()));
  return abs(x - y) / scale;
}

// Γ through MPFR's own implementation, independent of the library's gamma.
XReal mpfr_gamma_of(const Rational& q, mpfr_prec_t bits) {
  XReal x(q, bits);
  XReal out(bits);
  mpfr_gamma(out.get(), x.get(), MPFR_RNDN);
  return out;
}

XReal series_value(const Rational& a, const Rational& b, const Rational& c, int i, int j,
                   const PrecisionCtx& ctx) {
  return eval_unit(to_pfq(WatsonPoint{a, b, c, i, j}), ctx, EvalOptions::for_context(ctx)).value;
}

// Points where a gamma argument falls inside the pole guard are treated as
// poles by construction, so value comparisons skip them.
bool clear_of_poles(ClosedFormId id, const Rational& a, const Rational& b, const Rational& c, double guard = 0.05) {
  for (const Rational& q : closed_form_gamma_arguments(id, a, b, c)) {
    if (near_nonpositive_integer(q, guard)) return false;
  }
  return true;
}

struct Draw {
  std::mt19937_64 rng;
  explicit Draw(std::uint64_t seed) : rng(seed) {}
  Rational operator()(int lo, int hi) {
    return make_rational(std::uniform_int_distribution<int>(lo, hi)(rng), 100);
  }
};

}  // namespace

TEST(Gauss, Examples) {
  const PrecisionCtx ctx(40);
  const mpfr_prec_t bits = ctx.bits();
  EXPECT_LE(abs(gauss_2f1_unit(Rational(-1), Rational(3, 7), Rational(5, 2), ctx) -
                XReal((Rational(5, 2) - Rational(3, 7)) / Rational(5, 2), bits)),
            pow10_neg(38, bits));
  EXPECT_LE(abs(gauss_2f1_unit(Rational(1, 2), Rational(1, 2), Rational(2), ctx) -
                XReal(4L, bits) / XReal::pi(bits)),
            pow10_neg(38, bits));
  EXPECT_LE(abs(gauss_2f1_unit(Rational(0), Rational(3, 2), Rational(7, 3), ctx) - XReal::one(bits)),
            pow10_neg(38, bits));
  EXPECT_EQ(code_of([&] { gauss_2f1_unit(Rational(1), Rational(1), Rational(2), ctx); }),
            ErrorCode::divergence_region);
}

TEST(Gauss, MatchesSeries) {
  const PrecisionCtx ctx(30);
  Draw draw(5);
  for (int k = 0; k < 40; ++k) {
    const Rational a = draw(10, 250), b = draw(10, 250);
    const Rational c = a + b + draw(60, 250);
    const XReal closed = gauss_2f1_unit(a, b, c, ctx);
    const XReal series = eval_unit(PFQ{{a, b}, {c}, Rational(1)}, ctx, EvalOptions::for_context(ctx)).value;
    EXPECT_LE(rel_diff(closed, series), pow10_neg(25, ctx.bits())) << to_string(a) << " " << to_string(b);
  }
}

TEST(Watson, Examples) {
  const PrecisionCtx ctx(40);
  const mpfr_prec_t bits = ctx.bits();
  const XReal pi = XReal::pi(bits);
  EXPECT_LE(abs(watson_00(Rational(1), Rational(1), Rational(1), ctx) - pi * pi / 4L), pow10_neg(38, bits));
  EXPECT_LE(abs(watson_00(Rational(2), Rational(2), Rational(2), ctx) - XReal(9L, bits)), pow10_neg(37, bits));

  const EvalResult zero = eval_closed_form(ClosedFormId::watson_00, Rational(-1), Rational(1), Rational(1), ctx);
  ASSERT_TRUE(zero.exact);
  EXPECT_EQ(*zero.exact, Rational(0));
  EXPECT_TRUE(zero.value.is_zero());

  EXPECT_EQ(code_of([&] { watson_00(Rational(2), Rational(2), Rational(1), ctx); }), ErrorCode::divergence_region);
  // 2c − a − b = −0.97 is inside the region but inside the margin
  EXPECT_EQ(code_of([&] { watson_00(Rational(1), Rational(97, 100), Rational(1, 2), ctx); }),
            ErrorCode::divergence_region);
}

TEST(Watson, AgreesWithDirectGammaQuotient) {
  const PrecisionCtx ctx(40);
  const mpfr_prec_t bits = ctx.bits() + 20;
  Draw draw(11);
  for (int k = 0; k < 50; ++k) {
    const Rational a = draw(10, 300), b = draw(10, 300), c = draw(10, 300);
    if (2 * c - a - b <= Rational(-9, 10) || !clear_of_poles(ClosedFormId::watson_00, a, b, c)) continue;
    const Rational half(1, 2);
    const XReal num = mpfr_gamma_of(half, bits) * mpfr_gamma_of(c + half, bits) *
                      mpfr_gamma_of((a + b + 1) / 2, bits) * mpfr_gamma_of(c - (a + b - 1) / 2, bits);
    const XReal den = mpfr_gamma_of((a + 1) / 2, bits) * mpfr_gamma_of((b + 1) / 2, bits) *
                      mpfr_gamma_of(c - (a - 1) / 2, bits) * mpfr_gamma_of(c - (b - 1) / 2, bits);
    EXPECT_LE(rel_diff(watson_00(a, b, c, ctx), num / den), pow10_neg(36, ctx.bits()));
  }
}

TEST(Watson, MatchesSeriesAndIsSymmetric) {
  const PrecisionCtx ctx(30);
  Draw draw(13);
  for (int k = 0; k < 40; ++k) {
    const Rational a = draw(10, 300), b = draw(10, 300);
    const Rational c = (a + b) / 2 + draw(-40, 200);
    if (c <= Rational(1, 10) || !clear_of_poles(ClosedFormId::watson_00, a, b, c)) continue;
    const XReal closed = watson_00(a, b, c, ctx);
    EXPECT_LE(rel_diff(closed, series_value(a, b, c, 0, 0, ctx)), pow10_neg(20, ctx.bits()));
    EXPECT_LE(rel_diff(closed, watson_00(b, a, c, ctx)), pow10_neg(28, ctx.bits()));
  }
}

TEST(LavoiePlus, MatchesSeries) {
  const PrecisionCtx ctx(30);
  Draw draw(17);
  for (int k = 0; k < 40; ++k) {
    const Rational a = draw(10, 300), b = draw(10, 300);
    const Rational c = (a + b) / 2 + draw(-120, 200);
    if (c <= Rational(1, 10) || !clear_of_poles(ClosedFormId::lavoie_plus, a, b, c)) continue;
    EXPECT_LE(rel_diff(lavoie_plus(a, b, c, ctx), series_value(a, b, c, 0, 1, ctx)), pow10_neg(20, ctx.bits()))
        << to_string(a) << " " << to_string(b) << " " << to_string(c);
  }
}

TEST(LavoiePlus, GuardedDenominatorReadsAsPole) {
  // c − b/2 + 1 = 0.03 lies inside the default guard: the second brace is
  // dropped as an exact zero, so the value no longer matches the series.
  const PrecisionCtx guarded(30);
  const PrecisionCtx tight(30, 0.01);
  const Rational a(38, 100), b(215, 100), c(21, 200);
  const XReal series = series_value(a, b, c, 0, 1, tight);
  EXPECT_FALSE(clear_of_poles(ClosedFormId::lavoie_plus, a, b, c));
  EXPECT_GT(rel_diff(lavoie_plus(a, b, c, guarded), series), pow10_neg(3, guarded.bits()));
  EXPECT_LE(rel_diff(lavoie_plus(a, b, c, tight), series), pow10_neg(25, tight.bits()));
}

TEST(LavoiePlus, Errors) {
  const PrecisionCtx ctx(30);
  EXPECT_EQ(code_of([&] { lavoie_plus(Rational(0), Rational(1), Rational(1), ctx); }), ErrorCode::parameter_pole);
  EXPECT_EQ(code_of([&] { lavoie_plus(Rational(3), Rational(3), Rational(1), ctx); }), ErrorCode::divergence_region);
}

TEST(LavoieMinus, PrintedValueAtHalfHalfTwo) {
  const PrecisionCtx ctx(40);
  const mpfr_prec_t bits = ctx.bits();
  const XReal printed = lavoie_minus(Rational(1, 2), Rational(1, 2), Rational(2), ctx);
  EXPECT_LE(abs(printed - XReal(32L, bits) / (XReal::pi(bits) * 9L)), pow10_neg(37, bits));
  // the series it claims to sum is visibly different
  const XReal series = series_value(Rational(1, 2), Rational(1, 2), Rational(2), 0, -1, ctx);
  EXPECT_GT(rel_diff(printed, series), XReal(Rational(1, 10), bits));
}

TEST(LavoieMinus, Errors) {
  const PrecisionCtx ctx(30);
  EXPECT_EQ(code_of([&] { lavoie_minus(Rational(1), Rational(1), Rational(1), ctx); }),
            ErrorCode::divergence_region);
  EXPECT_EQ(code_of([&] { lavoie_minus(Rational(-2), Rational(1), Rational(3), ctx); }), ErrorCode::parameter_pole);
}

TEST(ClosedFormIds, RoundTrip) {
  for (ClosedFormId id : kAllClosedForms) {
    EXPECT_EQ(parse_closed_form_id(to_string(id)), id);
    EXPECT_FALSE(closed_form_source(id).empty());
  }
  EXPECT_EQ(code_of([] { parse_closed_form_id("dixon"); }), ErrorCode::unknown_id);
}

TEST(ClosedFormArguments, ListedGammasMatchForm) {
  const auto args = closed_form_gamma_arguments(ClosedFormId::gauss, Rational(1, 3), Rational(1, 4), Rational(2));
  ASSERT_EQ(args.size(), 4u);
  EXPECT_NE(std::find(args.begin(), args.end(), Rational(2) - Rational(1, 3) - Rational(1, 4)), args.end());
}

TEST(Registry, SampleMinimumAndRefutation) {
  FormRegistry reg;
  for (ClosedFormId id : kAllClosedForms) EXPECT_EQ(reg.status(id), FormStatus::unverified);

  reg.record(ClosedFormId::watson_00, true, false, kVerifySampleMinimum - 1, "1e-30", "watson_00@seed=1,digits=30");
  EXPECT_EQ(reg.status(ClosedFormId::watson_00), FormStatus::unverified);

  reg.record(ClosedFormId::watson_00, true, false, kVerifySampleMinimum, "1e-30", "watson_00@seed=2,digits=30");
  const FormVerdict v = reg.verdict(ClosedFormId::watson_00);
  EXPECT_EQ(v.status, FormStatus::verified);
  EXPECT_EQ(v.sample_count, kVerifySampleMinimum);
  EXPECT_EQ(v.evidence.size(), 2u);

  reg.record(ClosedFormId::lavoie_minus, false, true, 100, "0.2", "lavoie_minus@seed=1,digits=30");
  EXPECT_EQ(registry_verdict(reg, "lavoie_minus").status, FormStatus::refuted);
  EXPECT_EQ(code_of([&] { registry_verdict(reg, "nosuch"); }), ErrorCode::unknown_id);
  EXPECT_EQ(reg.snapshot().size(), kAllClosedForms.size());
}

TEST(Registry, FastPathOnlyWhenVerified) {
  const PrecisionCtx ctx(30);
  const EvalOptions opts = EvalOptions::for_context(ctx);
  const WatsonPoint p{Rational(1), Rational(1), Rational(1), 0, 0};
  FormRegistry reg;
  EXPECT_NE(eval_point(p, ctx, opts, &reg).method, EvalMethod::closed_form);
  reg.record(ClosedFormId::watson_00, true, false, 100, "0", "test");
  const EvalResult fast = eval_point(p, ctx, opts, &reg);
  EXPECT_EQ(fast.method, EvalMethod::closed_form);
  EXPECT_LE(rel_diff(fast.value, eval_point(p, ctx, opts).value), pow10_neg(25, ctx.bits()));
}
