#include "watson/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "watson/error.hpp"
#include "watson/gamma.hpp"
#include "watson/relations.hpp"

namespace watson {

namespace {

constexpr unsigned kMaxAttempts = 1000;
constexpr int kGridI = 11;  // i in [-5, 5]
constexpr int kGridJ = 7;   // j in [-3, 3]

using Params = std::vector<std::pair<std::string, Rational>>;

struct Draw {
  WatsonPoint p;
  Rational x;
  bool has_x = false;
  bool lattice = false;
};

Params params_of(const Draw& d) {
  if (d.has_x) return {{"a", d.p.a}, {"b", d.p.b}, {"x", d.x}};
  return {{"a", d.p.a}, {"b", d.p.b}, {"c", d.p.c}};
}

bool far_from_poles(const Rational& q, double guard) {
  return distance_to_nonpositive_integers(q) > Rational(guard);
}

bool far_from_zero(const Rational& q, double guard) { return abs(q) > Rational(guard); }

std::pair<int, int> grid_indices(std::size_t index) {
  const int cell = static_cast<int>(index % (kGridI * kGridJ));
  return {cell / kGridJ - 5, cell % kGridJ - 3};
}

Rational lattice_c(const Rational& a, const Rational& b, const Rational& s, int i, int j) {
  // margin(f_{i,j}) = s
  return s - j - Rational(i + 1, 2) + (a + b) / 2;
}

EvalOptions verify_options(const PrecisionCtx& ctx) {
  const long exponent = static_cast<long>((2 * ctx.digits + 2) / 3);
  return EvalOptions::with_tolerance(ctx, exponent);
}

XReal identity_threshold(const PrecisionCtx& ctx) {
  const mpfr_prec_t bits = ctx.bits();
  return exp(log(XReal(10L, bits)) * XReal(-static_cast<long>(ctx.digits), bits) / 3L);
}

// The relation catalogue -------------------------------------------------------

struct RelationDef {
  std::string id;
  std::string anchor;
  bool expected_identity = true;
  std::optional<ClosedFormId> form;
  std::vector<Draw> probes;
  std::function<Draw(std::uint64_t, std::size_t, const PrecisionCtx&)> draw;
  std::function<RelationEntry(const Draw&, const PrecisionCtx&, const EvalOptions&)> evaluate;
  std::vector<std::string> flags;
};

Draw lattice_draw(const Rational& a, const Rational& b, const Rational& c, int i, int j) {
  return Draw{WatsonPoint{a, b, c, i, j}, Rational(0), false, true};
}

Draw abc_draw(const Rational& a, const Rational& b, const Rational& c) {
  return Draw{WatsonPoint{a, b, c, 0, 0}, Rational(0), false, false};
}

bool points_generic(const std::vector<WatsonPoint>& points, double guard) {
  return std::all_of(points.begin(), points.end(),
                     [&](const WatsonPoint& p) { return pfq_generic(to_pfq(p), guard); });
}

// Recurrence-shaped relations: f_{i,j}, f_{i,j+1}, f_{i,j}(a+1,b+1,c+1).
bool recurrence_admissible(const WatsonPoint& p, double guard) {
  const auto& [a, b, c, i, j] = p;
  return far_from_zero(a + b + i + 1, guard) && far_from_zero(2 * c + j, guard) &&
         far_from_zero(2 * c + j + 1, guard) &&
         points_generic({p, WatsonPoint{a, b, c, i, j + 1}, shifted(p, 1)}, guard);
}

bool three_term_admissible(const WatsonPoint& p, double guard) {
  const auto& [a, b, c, i, j] = p;
  return far_from_zero(a + b + i + 1, guard) && far_from_zero(2 * c + j, guard) &&
         points_generic({p, WatsonPoint{a - 1, b, c, i + 1, j}, WatsonPoint{a, b + 1, c + 1, i + 1, j - 1}},
                        guard);
}

std::function<Draw(std::uint64_t, std::size_t, const PrecisionCtx&)> lattice_sampler(
    std::optional<std::pair<int, int>> fixed, bool three_term) {
  return [fixed, three_term](std::uint64_t seed, std::size_t index, const PrecisionCtx& ctx) {
    const auto [i, j] = fixed ? *fixed : grid_indices(index);
    SamplingConstraints sc;
    sc.pole_guard = ctx.pole_guard;
    sc.c_for_margin = [i = i, j = j](const Rational& a, const Rational& b, const Rational& s) -> Rational {
      return lattice_c(a, b, s, i, j);
    };
    sc.admissible = [i = i, j = j, three_term, guard = ctx.pole_guard](const Rational& a, const Rational& b,
                                                                       const Rational& c) {
      const WatsonPoint p{a, b, c, i, j};
      return three_term ? three_term_admissible(p, guard) : recurrence_admissible(p, guard);
    };
    const SampledParams s = sample_params(seed, index, sc);
    return lattice_draw(s.a, s.b, s.c, i, j);
  };
}

PFQ gauss_pfq(const Rational& a, const Rational& b, const Rational& c) { return PFQ{{a, b}, {c}, Rational(1)}; }

WatsonPoint form_point(ClosedFormId id, const Rational& a, const Rational& b, const Rational& c) {
  switch (id) {
    case ClosedFormId::lavoie_plus: return WatsonPoint{a, b, c, 0, 1};
    case ClosedFormId::lavoie_minus: return WatsonPoint{a, b, c, 0, -1};
    default: return WatsonPoint{a, b, c, 0, 0};
  }
}

RelationDef closed_form_def(ClosedFormId id) {
  RelationDef def;
  def.id = std::string(to_string(id));
  def.form = id;
  def.expected_identity = id != ClosedFormId::lavoie_minus;
  switch (id) {
    case ClosedFormId::gauss:
      def.anchor = "Gauss summation theorem for 2F1(a,b;c;1)";
      def.probes = {abc_draw(-1, Rational(1, 3), Rational(3, 4)), abc_draw(0, Rational(1, 2), 2),
                    abc_draw(Rational(1, 2), Rational(1, 2), 2)};
      break;
    case ClosedFormId::watson_00:
      def.anchor = "classical Watson summation theorem, 3F2(a,b,c;(a+b+1)/2,2c;1)";
      def.probes = {abc_draw(-1, 1, 1), abc_draw(1, 1, 1), abc_draw(2, 2, 2)};
      break;
    case ClosedFormId::lavoie_plus:
      def.anchor = "Lavoie contiguous Watson sum with second denominator 2c+1";
      def.probes = {abc_draw(1, 1, 1), abc_draw(Rational(1, 2), Rational(1, 2), 2)};
      break;
    case ClosedFormId::lavoie_minus:
      def.anchor = "Lavoie contiguous Watson sum with second denominator 2c-1";
      def.probes = {abc_draw(Rational(1, 2), Rational(1, 2), 2), abc_draw(0, Rational(1, 2), 2)};
      break;
  }
  def.draw = [id](std::uint64_t seed, std::size_t index, const PrecisionCtx& ctx) {
    SamplingConstraints sc;
    sc.pole_guard = ctx.pole_guard;
    switch (id) {
      case ClosedFormId::gauss:
        sc.c_for_margin = [](const Rational& a, const Rational& b, const Rational& s) -> Rational { return a + b + s; };
        break;
      case ClosedFormId::lavoie_plus:  // margin of f_{0,1}
        sc.c_for_margin = [](const Rational& a, const Rational& b, const Rational& s) -> Rational {
          return s - Rational(3, 2) + (a + b) / 2;
        };
        break;
      case ClosedFormId::lavoie_minus:  // margin of f_{0,-1}
        sc.c_for_margin = [](const Rational& a, const Rational& b, const Rational& s) -> Rational {
          return s + Rational(1, 2) + (a + b) / 2;
        };
        break;
      case ClosedFormId::watson_00:
        break;
    }
    sc.admissible = [id, guard = ctx.pole_guard](const Rational& a, const Rational& b, const Rational& c) {
      const PFQ f = id == ClosedFormId::gauss ? gauss_pfq(a, b, c) : to_pfq(form_point(id, a, b, c));
      if (!pfq_generic(f, guard)) return false;
      const auto args = closed_form_gamma_arguments(id, a, b, c);
      return std::all_of(args.begin(), args.end(), [&](const Rational& q) { return far_from_poles(q, guard); });
    };
    const SampledParams s = sample_params(seed, index, sc);
    return abc_draw(s.a, s.b, s.c);
  };
  def.evaluate = [id](const Draw& d, const PrecisionCtx& ctx, const EvalOptions& opts) {
    const auto& [a, b, c, i, j] = d.p;
    LinearForm series(ctx.bits());
    if (id == ClosedFormId::gauss) {
      series.add(Rational(1), eval_unit(gauss_pfq(a, b, c), ctx, opts));
    } else {
      series.add_point(Rational(1), form_point(id, a, b, c), ctx, opts);
    }
    LinearForm form(ctx.bits());
    form.add(Rational(1), eval_closed_form(id, a, b, c, ctx));
    return compare_sides(series.result(), form.result(), ctx.bits());
  };
  return def;
}

RelationDef recurrence_def() {
  RelationDef def;
  def.id = "recurrence_16";
  def.anchor = "main contiguous recurrence of the Watson lattice, stepping j";
  def.probes = {lattice_draw(-1, 1, 1, 0, 0), lattice_draw(0, Rational(3, 7), Rational(5, 4), 2, -1),
                lattice_draw(-2, Rational(1, 3), Rational(3, 4), 1, 1),
                lattice_draw(-1, Rational(2, 5), Rational(7, 4), -3, 2), lattice_draw(1, 1, 1, 0, 0)};
  def.draw = lattice_sampler(std::nullopt, false);
  def.evaluate = [](const Draw& d, const PrecisionCtx& ctx, const EvalOptions& opts) {
    return recurrence_residual(d.p, ctx, opts);
  };
  return def;
}

std::string case_id(int i, int j) { return "case_" + std::to_string(i) + "_" + std::to_string(j); }

RelationDef case_def(const PrintedCase& pc) {
  RelationDef def;
  def.id = case_id(pc.i, pc.j);
  def.anchor = "special case i=" + std::to_string(pc.i) + ", j=" + std::to_string(pc.j) +
               " of the main recurrence (regenerated; compared with the typeset form)";
  for (const Rational& a : {Rational(-1), Rational(-2), Rational(0)}) {
    def.probes.push_back(lattice_draw(a, Rational(1, 3), Rational(3, 4), pc.i, pc.j));
  }
  def.draw = lattice_sampler(std::pair{pc.i, pc.j}, false);
  def.evaluate = [](const Draw& d, const PrecisionCtx& ctx, const EvalOptions& opts) {
    return case_relation(d.p, ctx, opts);
  };
  def.flags = transcription_flags(pc);
  return def;
}

RelationDef three_term_def(bool printed) {
  RelationDef def;
  def.id = printed ? "three_term_printed" : "three_term_corrected";
  def.anchor = printed ? "three-term generalization in (i, j) as typeset"
                       : "three-term generalization rederived by telescoping (a)_n - (a-1)_n";
  def.expected_identity = !printed;
  def.probes = {lattice_draw(0, 1, 2, 0, 0), lattice_draw(0, 1, 1, 0, 0),
                lattice_draw(-1, Rational(1, 3), Rational(3, 4), 0, 0), lattice_draw(1, 1, 1, 0, 1)};
  def.draw = lattice_sampler(std::nullopt, true);
  def.evaluate = [printed](const Draw& d, const PrecisionCtx& ctx, const EvalOptions& opts) {
    return printed ? three_term_printed(d.p, ctx, opts) : three_term_corrected(d.p, ctx, opts);
  };
  return def;
}

// Thomae: 3F2(a,b,c;d,e;1) = Γ(d)Γ(e)Γ(s)/(Γ(a)Γ(b+s)Γ(c+s)) 3F2(d−a,e−a,s;b+s,c+s;1)
struct ThomaeShape {
  Rational d, e, s;
  PFQ lhs, rhs;
  std::vector<Rational> num, den;
};

ThomaeShape thomae_shape(const Rational& a, const Rational& b, const Rational& c) {
  ThomaeShape t;
  t.d = (a + b + 1) / 2;
  t.e = 2 * c;
  t.s = t.d + t.e - a - b - c;
  t.lhs = PFQ{{a, b, c}, {t.d, t.e}, Rational(1)};
  t.rhs = PFQ{{t.d - a, t.e - a, t.s}, {b + t.s, c + t.s}, Rational(1)};
  t.num = {t.d, t.e, t.s};
  t.den = {a, b + t.s, c + t.s};
  return t;
}

RelationDef thomae_def() {
  RelationDef def;
  def.id = "thomae";
  def.anchor = "Thomae transformation of 3F2 at unit argument, d=(a+b+1)/2, e=2c";
  def.probes = {abc_draw(0, Rational(1, 2), 1), abc_draw(Rational(1, 2), -1, Rational(3, 2)),
                abc_draw(Rational(1, 2), Rational(7, 10), Rational(6, 5)),
                abc_draw(Rational(7, 10), Rational(1, 2), Rational(6, 5))};
  def.draw = [](std::uint64_t seed, std::size_t index, const PrecisionCtx& ctx) {
    SamplingConstraints sc;
    sc.pole_guard = ctx.pole_guard;
    // the transformed series has margin a, so a is held to the same window
    sc.admissible = [guard = ctx.pole_guard, lo = sc.s_lo](const Rational& a, const Rational& b,
                                                           const Rational& c) {
      if (a < lo) return false;
      const ThomaeShape t = thomae_shape(a, b, c);
      if (!pfq_generic(t.lhs, guard) || !pfq_generic(t.rhs, guard)) return false;
      for (const auto* list : {&t.num, &t.den}) {
        for (const Rational& q : *list) {
          if (!far_from_poles(q, guard)) return false;
        }
      }
      return true;
    };
    const SampledParams s = sample_params(seed, index, sc);
    return abc_draw(s.a, s.b, s.c);
  };
  def.evaluate = [](const Draw& d, const PrecisionCtx& ctx, const EvalOptions& opts) {
    const ThomaeShape t = thomae_shape(d.p.a, d.p.b, d.p.c);
    const mpfr_prec_t bits = ctx.bits();
    LinearForm lhs(bits);
    lhs.add(Rational(1), eval_unit(t.lhs, ctx, opts));

    const EvalResult transformed = eval_unit(t.rhs, ctx, opts);
    std::vector<XReal> num, den;
    for (const Rational& q : t.num) num.emplace_back(q, bits);
    for (const Rational& q : t.den) den.emplace_back(q, bits);
    const GammaProduct g = gamma_product(num, den, ctx);
    if (g.status == GammaProductStatus::numerator_pole) {
      throw Error(ErrorCode::numerator_pole, "Thomae prefactor has a numerator pole");
    }
    LinearForm rhs(bits);
    if (g.status == GammaProductStatus::value) {
      XReal value = g.value * XReal(transformed.value, bits);
      XReal bound = abs(g.value) * XReal(transformed.abs_err_bound, bits) +
                    abs(value) * exp2(XReal(-static_cast<long>(bits) + 4L, bits));
      rhs.add_constant(value, bound);
    }
    SideValue right = rhs.result();
    right.converged = transformed.converged;
    return compare_sides(lhs.result(), std::move(right), bits);
  };
  return def;
}

Draw x_draw(const Rational& a, const Rational& b, const Rational& x) {
  return Draw{WatsonPoint{a, b, Rational(0), 0, 0}, x, true, false};
}

RelationDef macrobert_def() {
  RelationDef def;
  def.id = "macrobert";
  def.anchor = "MacRobert quadratic transformation of 2F1, |x|<1 and |4x(1-x)|<1";
  def.probes = {x_draw(Rational(3, 10), Rational(9, 20), 0), x_draw(Rational(3, 10), Rational(9, 20), Rational(1, 5)),
                x_draw(Rational(3, 10), Rational(9, 20), Rational(7, 25))};
  def.draw = [](std::uint64_t seed, std::size_t index, const PrecisionCtx&) {
    SplitMix64 rng(seed ^ static_cast<std::uint64_t>(index));
    const Rational lo(1, 10);
    const std::uint64_t span = 29000;  // (3 − 0.1) / step
    const Rational a = lo + Rational(static_cast<unsigned long>(rng.up_to(span))) * kSampleStep;
    const Rational b = lo + Rational(static_cast<unsigned long>(rng.up_to(span))) * kSampleStep;
    // x in [0.0001, (2 − √2)/2 − 0.01]
    const Rational x = Rational(static_cast<unsigned long>(1 + rng.up_to(2827))) * kSampleStep;
    return x_draw(a, b, x);
  };
  def.evaluate = [](const Draw& d, const PrecisionCtx& ctx, const EvalOptions& opts) {
    const Rational& a = d.p.a;
    const Rational& b = d.p.b;
    const Rational gamma = a + b + Rational(1, 2);
    LinearForm lhs(ctx.bits());
    lhs.add(Rational(1), eval_general(PFQ{{2 * a, 2 * b}, {gamma}, d.x}, ctx, opts));
    LinearForm rhs(ctx.bits());
    Rational z = 4 * d.x * (1 - d.x);
    rhs.add(Rational(1), eval_general(PFQ{{a, b}, {gamma}, z}, ctx, opts));
    return compare_sides(lhs.result(), rhs.result(), ctx.bits());
  };
  return def;
}

const std::vector<RelationDef>& catalogue() {
  static const std::vector<RelationDef> defs = [] {
    std::vector<RelationDef> out;
    for (ClosedFormId id : kAllClosedForms) out.push_back(closed_form_def(id));
    out.push_back(recurrence_def());
    for (const PrintedCase& pc : printed_cases()) out.push_back(case_def(pc));
    out.push_back(three_term_def(true));
    out.push_back(three_term_def(false));
    out.push_back(thomae_def());
    out.push_back(macrobert_def());
    return out;
  }();
  return defs;
}

const RelationDef* find_def(std::string_view id) {
  for (const RelationDef& d : catalogue()) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

RelationInstance evaluate_instance(const RelationDef& def, const Draw& draw, std::size_t index, bool probe,
                                   const PrecisionCtx& ctx, const EvalOptions& opts) {
  RelationInstance inst;
  inst.index = index;
  inst.probe = probe;
  inst.params = params_of(draw);
  if (draw.lattice) inst.lattice_indices = std::pair{draw.p.i, draw.p.j};
  try {
    inst.entry = def.evaluate(draw, ctx, opts);
  } catch (const Error& e) {
    inst.inapplicable = true;
    inst.note = std::string(to_string(e.code())) + ": " + e.what();
  }
  return inst;
}

void assign_verdict(RelationReport& report, const PrecisionCtx& ctx) {
  const mpfr_prec_t bits = ctx.bits();
  const XReal floor = identity_threshold(ctx);
  const XReal one_percent(0.01, bits);
  report.worst_rel_residual = XReal(bits);
  bool all_within = true;
  for (std::size_t k = 0; k < report.samples.size(); ++k) {
    const RelationInstance& s = report.samples[k];
    if (!s.counted()) continue;
    const XReal& rel = s.entry.rel_residual;
    if (rel > report.worst_rel_residual) report.worst_rel_residual = XReal(rel, bits);
    const XReal hundred_bounds = s.entry.rel_bound * 100L;
    if (rel > max(floor, hundred_bounds)) all_within = false;
    if (!report.counterexample && rel > one_percent && rel > hundred_bounds) report.counterexample = k;
  }
  if (report.counterexample) {
    report.verdict = Verdict::not_identity;
  } else if (all_within && report.counted_random() >= report.n_requested) {
    report.verdict = Verdict::identity;
  } else {
    report.verdict = Verdict::inconclusive;
  }
}

RelationReport run_def(const RelationDef& def, std::size_t n_samples, const PrecisionCtx& ctx,
                       const RunOptions& run) {
  RelationReport report;
  report.relation_id = def.id;
  report.paper_anchor = def.anchor;
  report.expected_identity = def.expected_identity;
  report.seed = run.seed;
  report.digits = ctx.digits;
  report.n_requested = n_samples;
  report.transcription_flags = def.flags;

  const EvalOptions opts = verify_options(ctx);
  const std::size_t n_probes = def.probes.size();
  report.samples.resize(n_probes + n_samples);
  parallel_for(n_probes + n_samples, run.threads, [&](std::size_t k) {
    if (k < n_probes) {
      report.samples[k] = evaluate_instance(def, def.probes[k], k, true, ctx, opts);
      return;
    }
    const std::size_t index = k - n_probes;
    try {
      const Draw draw = def.draw(run.seed, index, ctx);
      report.samples[k] = evaluate_instance(def, draw, index, false, ctx, opts);
    } catch (const Error& e) {
      RelationInstance inst;
      inst.index = index;
      inst.inapplicable = true;
      inst.note = std::string(to_string(e.code())) + ": " + e.what();
      report.samples[k] = std::move(inst);
    }
  });
  assign_verdict(report, ctx);
  return report;
}

void record_form(FormRegistry& registry, ClosedFormId id, const RelationReport& report) {
  registry.record(id, report.verdict == Verdict::identity, report.verdict == Verdict::not_identity,
                  report.counted_random(), report.worst_rel_residual.to_string(6),
                  report.relation_id + "@seed=" + std::to_string(report.seed) +
                      ",digits=" + std::to_string(report.digits));
}

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::up_to(std::uint64_t n) {
  if (n == ~std::uint64_t{0}) return next();
  const std::uint64_t range = n + 1;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range);
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % range;
}

SampledParams sample_params(std::uint64_t seed, std::uint64_t index, const SamplingConstraints& sc) {
  if (sc.s_lo > sc.s_hi || sc.param_lo > sc.param_hi) {
    throw Error(ErrorCode::sampling_exhausted, "empty sampling window");
  }
  auto steps = [](const Rational& lo, const Rational& hi) {
    Rational n = (hi - lo) / kSampleStep;
    return static_cast<std::uint64_t>(mpz_class(n.get_num() / n.get_den()).get_ui());
  };
  const std::uint64_t param_steps = steps(sc.param_lo, sc.param_hi);
  const std::uint64_t margin_steps = steps(sc.s_lo, sc.s_hi);

  SplitMix64 rng(seed ^ index);
  for (unsigned attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    SampledParams p;
    p.a = sc.param_lo + Rational(static_cast<unsigned long>(rng.up_to(param_steps))) * kSampleStep;
    p.b = sc.param_lo + Rational(static_cast<unsigned long>(rng.up_to(param_steps))) * kSampleStep;
    p.margin = sc.s_lo + Rational(static_cast<unsigned long>(rng.up_to(margin_steps))) * kSampleStep;
    p.c = sc.c_for_margin(p.a, p.b, p.margin);
    p.a.canonicalize();
    p.b.canonicalize();
    p.c.canonicalize();
    p.margin.canonicalize();
    p.attempts = attempt;
    if (!sc.admissible || sc.admissible(p.a, p.b, p.c)) return p;
  }
  throw Error(ErrorCode::sampling_exhausted,
              "no admissible parameters after " + std::to_string(kMaxAttempts) + " draws");
}

bool pfq_generic(const PFQ& f, double guard) {
  for (const auto* list : {&f.numerators, &f.denominators}) {
    for (const Rational& q : *list) {
      if (!far_from_poles(q, guard)) return false;
    }
  }
  return true;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::identity: return "identity";
    case Verdict::not_identity: return "not_identity";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::size_t RelationReport::counted_random() const {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [](const RelationInstance& s) { return !s.probe && s.counted(); }));
}

const std::vector<std::string>& relation_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const RelationDef& d : catalogue()) out.push_back(d.id);
    out.push_back("debranges");
    return out;
  }();
  return ids;
}

bool is_relation(std::string_view id) {
  const auto& ids = relation_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

RelationReport check_relation(std::string_view relation_id, const PrecisionCtx& ctx, const RunOptions& run,
                              FormRegistry* registry) {
  if (relation_id == "debranges") return check_debranges(DeBrangesGrid{}, ctx);
  const RelationDef* def = find_def(relation_id);
  if (def == nullptr) {
    throw Error(ErrorCode::unknown_relation, "no relation named '" + std::string(relation_id) + "'");
  }
  RelationReport report = run_def(*def, run.samples, ctx, run);
  if (def->form && registry != nullptr) record_form(*registry, *def->form, report);
  return report;
}

RelationReport check_thomae(const PrecisionCtx& ctx, const RunOptions& run) {
  return check_relation("thomae", ctx, run);
}

RelationReport check_macrobert(const PrecisionCtx& ctx, const RunOptions& run) {
  return check_relation("macrobert", ctx, run);
}

RelationReport check_debranges(const DeBrangesGrid& grid, const PrecisionCtx& ctx) {
  RelationReport report;
  report.relation_id = "debranges";
  report.paper_anchor = "de Branges positivity of 3F2(-n, n+alpha, (alpha+1)/2; alpha+1, (alpha+3)/2; x)";
  report.digits = ctx.digits;
  const mpfr_prec_t bits = ctx.bits();

  std::size_t skipped = 0;
  std::optional<Rational> minimum;
  std::size_t index = 0;
  for (int n = 0; n <= grid.n_max; ++n) {
    for (const Rational& alpha : grid.alphas) {
      const std::vector<Rational> dens = {alpha + 1, (alpha + 3) / 2};
      // (d)_k vanishes for k > m when d = −m; the sum reaches k = n
      const bool undefined = std::any_of(dens.begin(), dens.end(), [n](const Rational& d) {
        return is_nonpositive_integer(d) && -d < n;
      });
      for (const Rational& x : grid.xs) {
        if (undefined) {
          ++skipped;
          continue;
        }
        const PFQ f{{Rational(-n), n + alpha, (alpha + 1) / 2}, dens, x};
        const Rational value = eval_exact(f);
        RelationInstance inst;
        inst.index = index++;
        inst.params = {{"n", Rational(n)}, {"alpha", alpha}, {"x", x}};
        inst.entry.lhs = SideValue{XReal(value, bits), XReal(bits), true, value};
        inst.entry.rhs = SideValue{XReal(bits), XReal(bits), true, Rational(0)};
        inst.entry.exact = true;
        inst.entry.abs_residual = XReal(value > 0 ? Rational(0) : Rational(-value), bits);
        inst.entry.rel_residual = inst.entry.abs_residual;
        inst.entry.rel_bound = XReal(bits);
        if (!minimum || value < *minimum) minimum = value;
        if (value <= 0 && !report.counterexample) report.counterexample = report.samples.size();
        report.samples.push_back(std::move(inst));
      }
    }
  }
  report.n_requested = report.samples.size();
  report.worst_rel_residual = XReal(bits);
  for (const auto& s : report.samples) {
    if (s.entry.rel_residual > report.worst_rel_residual) report.worst_rel_residual = s.entry.rel_residual;
  }
  report.verdict = report.counterexample ? Verdict::not_identity : Verdict::identity;
  report.details.emplace_back("grid_points", std::to_string(report.samples.size()));
  report.details.emplace_back("skipped_points", std::to_string(skipped));
  if (minimum) report.details.emplace_back("minimum_value", XReal(*minimum, bits).to_string(20));
  return report;
}

bool SuiteResult::passed() const {
  return std::all_of(relations.begin(), relations.end(), [](const RelationReport& r) {
    return !r.expected_identity || r.verdict == Verdict::identity;
  });
}

RelationReport run_relation(std::string_view id, const PrecisionCtx& ctx, const RunOptions& run,
                            FormRegistry* registry) {
  const RelationDef* def = find_def(id);
  if (def != nullptr && def->form) {
    RunOptions widened = run;
    widened.samples = std::max<std::size_t>(run.samples, kVerifySampleMinimum);
    return check_relation(id, ctx, widened, registry);
  }
  return check_relation(id, ctx, run, registry);
}

SuiteResult run_suite(const PrecisionCtx& ctx, const RunOptions& run) {
  SuiteResult result;
  result.seed = run.seed;
  result.digits = ctx.digits;
  result.samples = run.samples;
  result.pole_guard = ctx.pole_guard;
  FormRegistry registry;
  for (const std::string& id : relation_ids()) {
    result.relations.push_back(run_relation(id, ctx, run, &registry));
  }
  result.closed_forms = registry.snapshot();
  return result;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < n; k = next++) fn(k);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace watson
