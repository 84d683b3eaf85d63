#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "watson/precision.hpp"
#include "watson/rational.hpp"
#include "watson/series.hpp"
#include "watson/xreal.hpp"

namespace watson {

/// The closed forms the verifier knows about.
enum class ClosedFormId { gauss, watson_00, lavoie_plus, lavoie_minus };

inline constexpr std::array<ClosedFormId, 4> kAllClosedForms = {
    ClosedFormId::gauss, ClosedFormId::watson_00, ClosedFormId::lavoie_plus,
    ClosedFormId::lavoie_minus};

std::string_view to_string(ClosedFormId id) noexcept;
/// Throws Error(unknown_id).
ClosedFormId parse_closed_form_id(std::string_view text);
/// Human-readable statement of the series the form sums.
std::string_view closed_form_source(ClosedFormId id) noexcept;

/// Safety margin added to every printed strict inequality on the parameters.
inline constexpr double kValidityMargin = 0.05;

/// Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b)), the sum of 2F1(a, b; c; 1).
/// Requires c − a − b >= kValidityMargin.
XReal gauss_2f1_unit(const Rational& a, const Rational& b, const Rational& c, const PrecisionCtx& ctx);

/// Watson's sum of 3F2(a, b, c; (a+b+1)/2, 2c; 1). Requires 2c − a − b > −1 (+ margin).
/// A denominator gamma at a pole gives exactly zero.
XReal watson_00(const Rational& a, const Rational& b, const Rational& c, const PrecisionCtx& ctx);

/// Lavoie's expression for 3F2(a, b, c; (a+b+1)/2, 2c+1; 1), as printed.
/// Requires 2c − a − b > −3 (+ margin); a, b away from the nonpositive integers.
XReal lavoie_plus(const Rational& a, const Rational& b, const Rational& c, const PrecisionCtx& ctx);

/// Lavoie's expression for 3F2(a, b, c; (a+b+1)/2, 2c−1; 1), exactly as printed.
/// Requires 2c − a − b > 1 (+ margin); a, b away from the nonpositive integers.
/// This routine computes the printed formula; whether it equals the series is
/// settled by the verifier, not assumed here.
XReal lavoie_minus(const Rational& a, const Rational& b, const Rational& c, const PrecisionCtx& ctx);

/// Dispatches to the form and packages the value with a rounding bound.
/// Exact zeros (a denominator gamma at a pole) are reported as exact.
EvalResult eval_closed_form(ClosedFormId id, const Rational& a, const Rational& b, const Rational& c,
                            const PrecisionCtx& ctx);

/// Every gamma argument appearing in the closed form (numerators and
/// denominators), for pole screening.
std::vector<Rational> closed_form_gamma_arguments(ClosedFormId id, const Rational& a,
                                                  const Rational& b, const Rational& c);

enum class FormStatus { unverified, verified, refuted };
std::string_view to_string(FormStatus status) noexcept;

struct FormVerdict {
  ClosedFormId id = ClosedFormId::gauss;
  FormStatus status = FormStatus::unverified;
  /// Relation reports backing the status, as "<relation_id>@seed=<seed>,digits=<digits>".
  std::vector<std::string> evidence;
  std::size_t sample_count = 0;
  std::string worst_residual = "";
};

/// Minimum number of agreeing samples before a form may be marked verified.
inline constexpr std::size_t kVerifySampleMinimum = 100;

/// Adjudication table for the closed forms. Reads and updates are atomic.
class FormRegistry {
 public:
  FormRegistry();

  FormVerdict verdict(ClosedFormId id) const;
  FormStatus status(ClosedFormId id) const;

  /// Folds one relation outcome into the table. `identity` with fewer than
  /// kVerifySampleMinimum counted samples leaves the form unverified.
  void record(ClosedFormId id, bool identity, bool refuted, std::size_t counted_samples,
              const std::string& worst_residual, const std::string& evidence);

  std::vector<FormVerdict> snapshot() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<ClosedFormId, FormVerdict> table_;
};

/// Lookup by textual id. Throws Error(unknown_id).
FormVerdict registry_verdict(const FormRegistry& registry, std::string_view id);

}  // namespace watson
