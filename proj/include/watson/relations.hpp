#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "watson/lattice.hpp"
#include "watson/rational.hpp"

namespace watson {

/// 3F2(a+shift, b+shift, c+shift; (a+b+first)/2, 2c+second; 1)
struct SeriesShape {
  int shift = 0;
  int first = 0;
  int second = 0;

  friend bool operator==(const SeriesShape&, const SeriesShape&) = default;
};

std::string to_string(const SeriesShape& s);

/// The shape of f_{i,j}(a+k, b+k, c+k).
SeriesShape lattice_shape(int i, int j, int k = 0);

/// Coefficient families appearing in the printed special cases.
enum class CoefficientForm {
  ab_over_2c1_s,            // ab / ((2c+1)(a+b+t))
  two_abc_over_2c1_2c2_s,   // 2abc / ((2c+1)(2c+2)(a+b+t))
  ab_over_2cm1_s,           // ab / ((2c−1)(a+b+t))
  abc_over_2cm1_cm1_s,      // abc / ((2c−1)(c−1)(a+b+t))
};

/// lhs = rhs1 + sign · coefficient · third, as typeset for one (i, j).
struct PrintedCase {
  int i = 0;
  int j = 0;
  SeriesShape lhs;
  SeriesShape rhs1;
  int sign = -1;
  CoefficientForm form = CoefficientForm::ab_over_2c1_s;
  int offset = 1;  // the t in (a+b+t)
  SeriesShape third;
};

std::string coefficient_text(const PrintedCase& pc);
Rational printed_coefficient(const PrintedCase& pc, const Rational& a, const Rational& b, const Rational& c);

/// The nineteen special cases in their published order.
const std::array<PrintedCase, 19>& printed_cases();

/// The same relation regenerated from the main recurrence at (i, j), oriented
/// like the printed statement (solved for f_{i,j} when j = −1, for f_{i,j+1}
/// otherwise).
struct RegeneratedCase {
  int i = 0;
  int j = 0;
  SeriesShape lhs;
  SeriesShape rhs1;
  int sign = -1;
  SeriesShape third;
};

RegeneratedCase regenerate_case(int i, int j);

/// Differences between the printed and the regenerated statement. Empty
/// when they agree. Coefficients are compared exactly at fixed rational
/// probe points.
std::vector<std::string> transcription_flags(const PrintedCase& printed);

/// lhs and rhs of the regenerated case relation at (a, b, c).
RelationEntry case_relation(const WatsonPoint& p, const PrecisionCtx& ctx, const EvalOptions& opts);

}  // namespace watson
