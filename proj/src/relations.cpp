#include "watson/relations.hpp"

#include "watson/error.hpp"

namespace watson {

namespace {

std::string signed_offset(const char* base, int offset) {
  if (offset == 0) return base;
  return std::string(base) + (offset > 0 ? "+" : "-") + std::to_string(offset > 0 ? offset : -offset);
}

PrintedCase unit_row(int i) {
  return PrintedCase{i, 0, {0, i + 1, 1}, {0, i + 1, 0}, -1, CoefficientForm::ab_over_2c1_s, i + 1,
                     {1, i + 3, 2}};
}

PrintedCase row_one(int i) {
  return PrintedCase{i, 1, {0, i + 1, 2}, {0, i + 1, 1}, -1, CoefficientForm::two_abc_over_2c1_2c2_s, i + 1,
                     {1, i + 3, 3}};
}

PrintedCase row_minus_one(int i, int third_first) {
  return PrintedCase{i, -1, {0, i + 1, -1}, {0, i + 1, 0}, +1, CoefficientForm::ab_over_2cm1_s, i + 1,
                     {1, third_first, 1}};
}

PrintedCase row_minus_two(int i) {
  return PrintedCase{i, -2, {0, i + 1, -1}, {0, i + 1, -2}, -1, CoefficientForm::abc_over_2cm1_cm1_s, i + 1,
                     {1, i + 3, 0}};
}

const std::array<std::array<Rational, 3>, 3> kProbePoints = {{
    {Rational(3, 7), Rational(5, 11), Rational(13, 17)},
    {Rational(-9, 4), Rational(2, 3), Rational(19, 5)},
    {Rational(11, 3), Rational(-5, 8), Rational(7, 9)},
}};

}  // namespace

std::string to_string(const SeriesShape& s) {
  const std::string a = signed_offset("a", s.shift);
  const std::string b = signed_offset("b", s.shift);
  const std::string c = signed_offset("c", s.shift);
  return "3F2(" + a + ", " + b + ", " + c + "; (" + signed_offset("a+b", s.first) + ")/2, " +
         signed_offset("2c", s.second) + "; 1)";
}

SeriesShape lattice_shape(int i, int j, int k) {
  // (a+k+b+k+i+1)/2 and 2(c+k)+j
  return SeriesShape{k, i + 1 + 2 * k, j + 2 * k};
}

std::string coefficient_text(const PrintedCase& pc) {
  const std::string s = "(" + signed_offset("a+b", pc.offset) + ")";
  switch (pc.form) {
    case CoefficientForm::ab_over_2c1_s: return "ab/((2c+1)" + s + ")";
    case CoefficientForm::two_abc_over_2c1_2c2_s: return "2abc/((2c+1)(2c+2)" + s + ")";
    case CoefficientForm::ab_over_2cm1_s: return "ab/((2c-1)" + s + ")";
    case CoefficientForm::abc_over_2cm1_cm1_s: return "abc/((2c-1)(c-1)" + s + ")";
  }
  return "";
}

Rational printed_coefficient(const PrintedCase& pc, const Rational& a, const Rational& b, const Rational& c) {
  const Rational s = a + b + pc.offset;
  Rational k;
  switch (pc.form) {
    case CoefficientForm::ab_over_2c1_s: k = a * b / ((2 * c + 1) * s); break;
    case CoefficientForm::two_abc_over_2c1_2c2_s: k = 2 * a * b * c / ((2 * c + 1) * (2 * c + 2) * s); break;
    case CoefficientForm::ab_over_2cm1_s: k = a * b / ((2 * c - 1) * s); break;
    case CoefficientForm::abc_over_2cm1_cm1_s: k = a * b * c / ((2 * c - 1) * (c - 1) * s); break;
  }
  k.canonicalize();
  return k;
}

const std::array<PrintedCase, 19>& printed_cases() {
  static const std::array<PrintedCase, 19> table = {
      unit_row(0),  unit_row(1),  unit_row(2),  unit_row(3),  unit_row(4),
      unit_row(5),  unit_row(-1), unit_row(-2), unit_row(-3), unit_row(-4),
      unit_row(-5), row_one(0),   row_one(1),   row_one(2),
      row_minus_one(0, 3), row_minus_one(1, 4),
      row_minus_one(2, 4),  // typeset as (a+b+4)/2
      row_minus_two(1), row_minus_two(-1),
  };
  return table;
}

RegeneratedCase regenerate_case(int i, int j) {
  RegeneratedCase r;
  r.i = i;
  r.j = j;
  r.third = lattice_shape(i, j, 1);
  if (j == -1) {
    r.lhs = lattice_shape(i, j);
    r.rhs1 = lattice_shape(i, j + 1);
    r.sign = +1;
  } else {
    r.lhs = lattice_shape(i, j + 1);
    r.rhs1 = lattice_shape(i, j);
    r.sign = -1;
  }
  return r;
}

std::vector<std::string> transcription_flags(const PrintedCase& printed) {
  const RegeneratedCase regen = regenerate_case(printed.i, printed.j);
  std::vector<std::string> flags;
  auto compare = [&](const char* role, const SeriesShape& p, const SeriesShape& r) {
    if (p.shift != r.shift) {
      flags.push_back(std::string(role) + " numerator shift: printed " + std::to_string(p.shift) +
                      ", regenerated " + std::to_string(r.shift));
    }
    if (p.first != r.first) {
      flags.push_back(std::string(role) + " first denominator: printed (" + signed_offset("a+b", p.first) +
                      ")/2, regenerated (" + signed_offset("a+b", r.first) + ")/2");
    }
    if (p.second != r.second) {
      flags.push_back(std::string(role) + " second denominator: printed " + signed_offset("2c", p.second) +
                      ", regenerated " + signed_offset("2c", r.second));
    }
  };
  compare("lhs", printed.lhs, regen.lhs);
  compare("rhs first series", printed.rhs1, regen.rhs1);
  compare("rhs second series", printed.third, regen.third);

  for (const auto& [a, b, c] : kProbePoints) {
    const Rational expected = regen.sign * recurrence_coefficient(a, b, c, printed.i, printed.j);
    const Rational got = printed.sign * printed_coefficient(printed, a, b, c);
    if (expected != got) {
      flags.push_back("coefficient: printed " + std::string(printed.sign > 0 ? "+" : "-") +
                      coefficient_text(printed) + " disagrees with the regenerated coupling at (a,b,c) = (" +
                      to_string(a) + ", " + to_string(b) + ", " + to_string(c) + ")");
      break;
    }
  }
  return flags;
}

RelationEntry case_relation(const WatsonPoint& p, const PrecisionCtx& ctx, const EvalOptions& opts) {
  const auto& [a, b, c, i, j] = p;
  const Rational first = a + b + i + 1;
  const Rational second = 2 * c + j;
  for (const auto& [factor, name] :
       {std::pair{first, "a+b+i+1"}, std::pair{second, "2c+j"}, std::pair{Rational(second + 1), "2c+j+1"}}) {
    if (near_zero(factor, ctx.pole_guard)) {
      throw Error(ErrorCode::precondition_violation,
                  std::string(name) + " = " + to_decimal_string(factor) + " is within pole_guard of 0");
    }
  }
  const Rational k = recurrence_coefficient(a, b, c, i, j);
  const WatsonPoint upper{a, b, c, i, j + 1};
  LinearForm lhs(ctx.bits());
  LinearForm rhs(ctx.bits());
  if (j == -1) {
    lhs.add_point(Rational(1), p, ctx, opts);
    rhs.add_point(Rational(1), upper, ctx, opts);
    rhs.add_point(k, shifted(p, 1), ctx, opts);
  } else {
    lhs.add_point(Rational(1), upper, ctx, opts);
    rhs.add_point(Rational(1), p, ctx, opts);
    rhs.add_point(-k, shifted(p, 1), ctx, opts);
  }
  return compare_sides(lhs.result(), rhs.result(), ctx.bits());
}

}  // namespace watson
