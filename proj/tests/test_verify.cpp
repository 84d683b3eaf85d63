#include <gtest/gtest.h>

#include "watson/error.hpp"
#include "watson/report.hpp"
#include "watson/verify.hpp"

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

Rational param(const RelationInstance& s, const std::string& name) {
  for (const auto& [k, v] : s.params) {
    if (k == name) return v;
  }
  ADD_FAILURE() << "no parameter " << name;
  return Rational(0);
}

// Term-by-term rising products, independent of the library's ratio recurrence.
Rational debranges_sum(int n, const Rational& alpha, const Rational& x) {
  Rational total(0);
  for (int k = 0; k <= n; ++k) {
    Rational term(1);
    for (int m = 0; m < k; ++m) {
      term *= Rational(-n + m) * (n + alpha + m) * ((alpha + 1) / 2 + m);
      term /= (alpha + 1 + m) * ((alpha + 3) / 2 + m) * Rational(m + 1);
    }
    for (int m = 0; m < k; ++m) term *= x;
    total += term;
  }
  return total;
}

}  // namespace

TEST(SplitMix, KnownSequence) {
  // reference outputs of splitmix64 from seed 0
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
  SplitMix64 bounded(42);
  for (int k = 0; k < 1000; ++k) EXPECT_LE(bounded.up_to(7), 7u);
}

TEST(SampleParams, DeterministicAndInsideWindow) {
  SamplingConstraints sc;
  for (std::uint64_t index = 0; index < 200; ++index) {
    const SampledParams p = sample_params(0xC0FFEE, index, sc);
    const SampledParams again = sample_params(0xC0FFEE, index, sc);
    EXPECT_EQ(p.a, again.a);
    EXPECT_EQ(p.b, again.b);
    EXPECT_EQ(p.c, again.c);
    EXPECT_GE(p.margin, sc.s_lo);
    EXPECT_LE(p.margin, sc.s_hi);
    EXPECT_GE(p.a, sc.param_lo);
    EXPECT_LE(p.a, sc.param_hi);
    EXPECT_GE(p.b, sc.param_lo);
    EXPECT_LE(p.b, sc.param_hi);
    // default c solves margin = c + 1/2 − (a+b)/2
    EXPECT_EQ(p.c + Rational(1, 2) - (p.a + p.b) / 2, p.margin);
    // quantized to the sampling grid
    EXPECT_EQ(Rational(p.a / kSampleStep).get_den(), 1);
  }
  EXPECT_NE(sample_params(1, 0, sc).a + sample_params(1, 0, sc).b,
            sample_params(2, 0, sc).a + sample_params(2, 0, sc).b + 1);
}

TEST(SampleParams, AdmissibilityFilterRespected) {
  SamplingConstraints sc;
  sc.admissible = [](const Rational& a, const Rational&, const Rational&) { return a > 2; };
  for (std::uint64_t index = 0; index < 50; ++index) EXPECT_GT(sample_params(7, index, sc).a, 2);
}

TEST(SampleParams, EmptyWindowExhausts) {
  SamplingConstraints inverted;
  inverted.s_lo = 3;
  inverted.s_hi = Rational(1, 2);
  EXPECT_EQ(code_of([&] { sample_params(1, 0, inverted); }), ErrorCode::sampling_exhausted);
  SamplingConstraints never;
  never.admissible = [](const Rational&, const Rational&, const Rational&) { return false; };
  EXPECT_EQ(code_of([&] { sample_params(1, 0, never); }), ErrorCode::sampling_exhausted);
}

TEST(Relations, CatalogueOrder) {
  const auto& ids = relation_ids();
  ASSERT_EQ(ids.size(), 4u + 1u + 19u + 2u + 2u + 1u);
  EXPECT_EQ(ids.front(), "gauss");
  EXPECT_EQ(ids[4], "recurrence_16");
  EXPECT_EQ(ids[5], "case_0_0");
  EXPECT_EQ(ids[21], "case_2_-1");
  EXPECT_EQ(ids.back(), "debranges");
  EXPECT_TRUE(is_relation("thomae"));
  EXPECT_FALSE(is_relation("nosuch"));
  EXPECT_EQ(code_of([] { check_relation("nosuch", PrecisionCtx(30), RunOptions{}); }), ErrorCode::unknown_relation);
}

TEST(CheckRelation, WatsonIsIdentityAndUpdatesRegistry) {
  const PrecisionCtx ctx(30);
  FormRegistry reg;
  const RelationReport r = check_relation("watson_00", ctx, RunOptions{0xC0FFEE, 100, 1}, &reg);
  EXPECT_EQ(r.verdict, Verdict::identity);
  EXPECT_GE(r.counted_random(), 100u);
  EXPECT_EQ(reg.status(ClosedFormId::watson_00), FormStatus::verified);
  EXPECT_EQ(reg.status(ClosedFormId::gauss), FormStatus::unverified);
}

TEST(CheckRelation, ClosedFormBelowMinimumStaysUnverified) {
  FormRegistry reg;
  check_relation("gauss", PrecisionCtx(30), RunOptions{5, 20, 1}, &reg);
  EXPECT_EQ(reg.status(ClosedFormId::gauss), FormStatus::unverified);
}

TEST(CheckRelation, PrintedThreeTermRefutedByExactProbe) {
  const RelationReport r = check_relation("three_term_printed", PrecisionCtx(30), RunOptions{0xC0FFEE, 20, 1});
  EXPECT_EQ(r.verdict, Verdict::not_identity);
  ASSERT_TRUE(r.counterexample);
  const RelationInstance& w = r.samples[*r.counterexample];
  EXPECT_TRUE(w.probe);
  EXPECT_EQ(param(w, "a"), 0);
  EXPECT_EQ(param(w, "b"), 1);
  EXPECT_EQ(param(w, "c"), 2);
  ASSERT_TRUE(w.lattice_indices);
  EXPECT_EQ(*w.lattice_indices, std::make_pair(0, 0));
  ASSERT_TRUE(w.entry.lhs.exact && w.entry.rhs.exact);
  EXPECT_EQ(*w.entry.lhs.exact, 1);
  EXPECT_EQ(*w.entry.rhs.exact, 2);
}

TEST(CheckRelation, RecurrenceProbeAtZeroIsExact) {
  const RelationReport r = check_relation("recurrence_16", PrecisionCtx(30), RunOptions{3, 30, 1});
  EXPECT_EQ(r.verdict, Verdict::identity);
  bool saw_a0 = false;
  for (const auto& s : r.samples) {
    if (!s.probe || s.inapplicable || param(s, "a") != 0) continue;
    saw_a0 = true;
    EXPECT_TRUE(s.entry.exact);
    EXPECT_TRUE(s.entry.abs_residual.is_zero());
  }
  EXPECT_TRUE(saw_a0);
}

TEST(CheckRelation, LavoieMinusRefutedAtHalfHalfTwo) {
  FormRegistry reg;
  const RelationReport r = check_relation("lavoie_minus", PrecisionCtx(30), RunOptions{0xC0FFEE, 100, 1}, &reg);
  EXPECT_EQ(r.verdict, Verdict::not_identity);
  EXPECT_FALSE(r.expected_identity);
  ASSERT_TRUE(r.counterexample);
  EXPECT_EQ(reg.status(ClosedFormId::lavoie_minus), FormStatus::refuted);
}

TEST(CheckRelation, ThomaeAndMacRobertHold) {
  const PrecisionCtx ctx(30);
  for (const RelationReport& r : {check_thomae(ctx, RunOptions{11, 30, 1}), check_macrobert(ctx, RunOptions{11, 30, 1})}) {
    EXPECT_EQ(r.verdict, Verdict::identity) << r.relation_id;
    EXPECT_LE(r.worst_rel_residual, pow10_neg(10, ctx.bits())) << r.relation_id;
  }
}

TEST(CheckRelation, MacRobertProbes) {
  const RelationReport r = check_macrobert(PrecisionCtx(30), RunOptions{11, 5, 1});
  bool origin = false, edge = false;
  for (const auto& s : r.samples) {
    if (!s.probe) continue;
    if (param(s, "x") == 0) {
      origin = true;
      ASSERT_TRUE(s.entry.lhs.exact && s.entry.rhs.exact);
      EXPECT_EQ(*s.entry.lhs.exact, 1);
      EXPECT_EQ(*s.entry.rhs.exact, 1);
    }
    if (param(s, "x") == Rational(7, 25)) {
      edge = true;
      EXPECT_LE(s.entry.rel_residual, pow10_neg(10, 108));
    }
  }
  EXPECT_TRUE(origin);
  EXPECT_TRUE(edge);
}

TEST(Transcription, OnlyCaseTwoMinusOneFlagged) {
  const PrecisionCtx ctx(30);
  std::size_t flagged = 0;
  for (const std::string& id : relation_ids()) {
    if (id.rfind("case_", 0) != 0) continue;
    const RelationReport r = check_relation(id, ctx, RunOptions{1, 3, 1});
    if (r.transcription_flags.empty()) continue;
    ++flagged;
    EXPECT_EQ(id, "case_2_-1");
    ASSERT_EQ(r.transcription_flags.size(), 1u);
    EXPECT_NE(r.transcription_flags[0].find("(a+b+4)/2"), std::string::npos);
    EXPECT_NE(r.transcription_flags[0].find("(a+b+5)/2"), std::string::npos);
  }
  EXPECT_EQ(flagged, 1u);
}

TEST(Cases, TerminatingProbesExactlyZero) {
  const PrecisionCtx ctx(30);
  for (const std::string& id : relation_ids()) {
    if (id.rfind("case_", 0) != 0) continue;
    const RelationReport r = check_relation(id, ctx, RunOptions{1, 3, 1});
    EXPECT_EQ(r.verdict, Verdict::identity) << id;
    std::size_t exact = 0;
    for (const auto& s : r.samples) {
      if (!s.probe || s.inapplicable || param(s, "a") >= 0) continue;
      EXPECT_TRUE(s.entry.exact) << id;
      EXPECT_TRUE(s.entry.abs_residual.is_zero()) << id;
      ++exact;
    }
    EXPECT_GE(exact, 1u) << id;
  }
}

TEST(DeBranges, SmallExamples) {
  const PrecisionCtx ctx(30);
  DeBrangesGrid tiny;
  tiny.n_max = 1;
  tiny.alphas = {Rational(1)};
  tiny.xs = {Rational(1, 2)};
  const RelationReport r = check_debranges(tiny, ctx);
  ASSERT_EQ(r.samples.size(), 2u);
  EXPECT_EQ(*r.samples[0].entry.lhs.exact, 1);
  EXPECT_EQ(*r.samples[1].entry.lhs.exact, Rational(3, 4));
  EXPECT_EQ(r.verdict, Verdict::identity);
}

TEST(DeBranges, FullGridPositiveAndMatchesDirectSums) {
  const PrecisionCtx ctx(30);
  const DeBrangesGrid grid;
  const RelationReport r = check_debranges(grid, ctx);
  EXPECT_EQ(r.verdict, Verdict::identity);
  EXPECT_FALSE(r.counterexample);
  std::size_t expected_points = 0;
  for (int n = 0; n <= grid.n_max; ++n) {
    for (const Rational& alpha : grid.alphas) {
      // α = −1 makes α+1 = 0, reached by every n ≥ 1
      if (alpha == -1 && n >= 1) continue;
      expected_points += grid.xs.size();
    }
  }
  ASSERT_EQ(r.samples.size(), expected_points);
  for (const auto& s : r.samples) {
    const Rational direct = debranges_sum(static_cast<int>(param(s, "n").get_num().get_si()), param(s, "alpha"),
                                          param(s, "x"));
    ASSERT_TRUE(s.entry.lhs.exact);
    EXPECT_EQ(*s.entry.lhs.exact, direct);
    EXPECT_GT(direct, 0);
  }
}

TEST(Verdict, ResidualWithinBoundsNeverRefutes) {
  const RelationReport r = check_relation("recurrence_16", PrecisionCtx(30), RunOptions{17, 40, 1});
  for (const auto& s : r.samples) {
    if (!s.counted()) continue;
    if (s.entry.rel_residual <= s.entry.rel_bound * 100L) {
      EXPECT_NE(r.verdict, Verdict::not_identity);
    }
  }
}

TEST(Verdict, StableUnderHigherPrecision) {
  for (const char* id : {"watson_00", "case_1_1", "thomae"}) {
    const RelationReport lo = check_relation(id, PrecisionCtx(30), RunOptions{5, 20, 1});
    const RelationReport hi = check_relation(id, PrecisionCtx(50), RunOptions{5, 20, 1});
    EXPECT_EQ(lo.verdict, Verdict::identity) << id;
    EXPECT_EQ(hi.verdict, lo.verdict) << id;
  }
}

TEST(Suite, ByteIdenticalAcrossThreadCounts) {
  const PrecisionCtx ctx(20);
  const std::string one = to_json(run_suite(ctx, RunOptions{99, 4, 1}));
  const std::string again = to_json(run_suite(ctx, RunOptions{99, 4, 1}));
  const std::string four = to_json(run_suite(ctx, RunOptions{99, 4, 4}));
  EXPECT_EQ(one, again);
  EXPECT_EQ(one, four);
  EXPECT_NE(one.find("\"suite_version\""), std::string::npos);
  EXPECT_EQ(to_csv(run_suite(ctx, RunOptions{99, 4, 3})), to_csv(run_suite(ctx, RunOptions{99, 4, 1})));
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<int> hits(257, 0);
  parallel_for(hits.size(), 5, [&](std::size_t k) { hits[k] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
}
