#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "watson/closedform.hpp"
#include "watson/precision.hpp"
#include "watson/rational.hpp"
#include "watson/series.hpp"
#include "watson/xreal.hpp"

namespace watson {

/// f_{i,j}(a,b,c) = 3F2(a, b, c; (a+b+i+1)/2, 2c+j; 1).
struct WatsonPoint {
  Rational a, b, c;
  int i = 0;
  int j = 0;
};

std::string to_string(const WatsonPoint& p);

PFQ to_pfq(const WatsonPoint& p);

/// c + j + (i+1)/2 − (a+b)/2.
Rational margin(const WatsonPoint& p);

/// (a+k, b+k, c+k) at the same (i, j).
WatsonPoint shifted(const WatsonPoint& p, long k);

/// Exact sum for terminating points, closed form when the registry has
/// verified the matching form and its preconditions hold, series otherwise.
/// Pass no registry to force series evaluation. Throws divergent_series.
EvalResult eval_point(const WatsonPoint& p, const PrecisionCtx& ctx, const EvalOptions& opts,
                      const FormRegistry* registry = nullptr);

/// One side of a linear relation, Σ coefficient · value.
struct SideValue {
  XReal value;
  XReal abs_err_bound;
  bool converged = true;
  std::optional<Rational> exact;
};

/// Accumulates Σ coefficient · EvalResult. Terms with an exactly zero
/// coefficient are never evaluated, so they may name divergent points.
class LinearForm {
 public:
  explicit LinearForm(mpfr_prec_t bits);

  void add(const Rational& coefficient, const EvalResult& term);
  void add_point(const Rational& coefficient, const WatsonPoint& p, const PrecisionCtx& ctx,
                 const EvalOptions& opts, const FormRegistry* registry = nullptr);
  void add_constant(const XReal& value, const XReal& abs_err_bound);

  SideValue result() const;

 private:
  XReal value_;
  XReal bound_;
  bool converged_ = true;
  std::optional<Rational> exact_ = Rational(0);
};

/// Both sides of one relation instance and their discrepancy.
struct RelationEntry {
  SideValue lhs;
  SideValue rhs;
  XReal abs_residual;
  /// abs_residual / max(|lhs|, |rhs|, 1)
  XReal rel_residual;
  /// Combined evaluation bound, on the same relative scale as rel_residual.
  XReal rel_bound;
  bool converged = true;
  /// Residual computed in exact rational arithmetic.
  bool exact = false;
};

RelationEntry compare_sides(SideValue lhs, SideValue rhs, mpfr_prec_t bits);

/// L = (2c+j) f_{i,j+1}(a,b,c),
/// R = (2c+j) f_{i,j}(a,b,c) − 2abc/((a+b+i+1)(2c+j+1)) f_{i,j}(a+1,b+1,c+1).
/// Throws precondition_violation naming any factor within pole_guard of 0.
RelationEntry recurrence_residual(const WatsonPoint& p, const PrecisionCtx& ctx,
                                  const EvalOptions& opts);

/// f_{i,j+1} − K f_{i,j}(a+1,b+1,c+1), K = 2abc/((a+b+i+1)(2c+j)(2c+j+1)):
/// the recurrence divided through by 2c+j.
Rational recurrence_coefficient(const Rational& a, const Rational& b, const Rational& c, int i,
                                int j);

/// LHS f_{i,j}(a,b,c);
/// RHS (2c+j) f_{i+1,j}(a−1,b,c) − 2ab/((a+b+i+1)(2c+j)) f_{i+1,j−1}(a,b+1,c+1).
RelationEntry three_term_printed(const WatsonPoint& p, const PrecisionCtx& ctx,
                                 const EvalOptions& opts);

/// LHS f_{i,j}(a,b,c);
/// RHS f_{i+1,j}(a−1,b,c) + 2bc/((a+b+i+1)(2c+j)) f_{i+1,j−1}(a,b+1,c+1).
RelationEntry three_term_corrected(const WatsonPoint& p, const PrecisionCtx& ctx,
                                   const EvalOptions& opts);

struct ReductionTerm {
  long shift = 0;
  Rational weight;
  EvalResult base;  // watson_00(a+k, b+k, c+k)
};

/// f_{0,j}(a,b,c) = Σ_k weight_k · watson_00(a+k, b+k, c+k).
struct ReductionPlan {
  WatsonPoint target;
  std::vector<ReductionTerm> terms;  // ascending shift
  XReal value;
  XReal abs_err_bound;
  /// Direct series evaluation of the target and |value − series|.
  EvalResult series;
  XReal residual;
};

/// Throws unsupported_index (i ≠ 0 or j < 0) and precondition_violation
/// (base row divergent, a recurrence factor at zero, a base value needing a
/// numerator pole).
ReductionPlan reduce_to_watson(const WatsonPoint& target, const PrecisionCtx& ctx,
                               const EvalOptions& opts);

}  // namespace watson
