#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "watson/closedform.hpp"
#include "watson/lattice.hpp"
#include "watson/precision.hpp"
#include "watson/rational.hpp"

namespace watson {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform integer in [0, n].
  std::uint64_t up_to(std::uint64_t n);

 private:
  std::uint64_t state_;
};

/// Quantization step for sampled parameters.
inline const Rational kSampleStep(1, 10000);

struct SamplingConstraints {
  Rational s_lo{3, 4};
  Rational s_hi{3};
  Rational param_lo{1, 10};
  Rational param_hi{3};
  double pole_guard = 0.05;
  /// c as a function of (a, b, margin of the tightest constituent).
  std::function<Rational(const Rational&, const Rational&, const Rational&)> c_for_margin =
      [](const Rational& a, const Rational& b, const Rational& s) -> Rational { return s - Rational(1, 2) + (a + b) / 2; };
  /// Extra screening (gamma arguments, vanishing factors). Default accepts.
  std::function<bool(const Rational&, const Rational&, const Rational&)> admissible;
};

struct SampledParams {
  Rational a, b, c;
  Rational margin;
  unsigned attempts = 0;
};

/// splitmix64 seeded with seed ^ index; a, b uniform on the quantized grid
/// in [param_lo, param_hi], margin uniform in [s_lo, s_hi], c solved from it.
/// Throws sampling_exhausted after 1000 rejected draws or when s_lo > s_hi.
SampledParams sample_params(std::uint64_t seed, std::uint64_t index, const SamplingConstraints& constraints);

/// True when every parameter of the series stays farther than guard from the
/// nonpositive integers.
bool pfq_generic(const PFQ& f, double guard);

enum class Verdict { identity, not_identity, inconclusive };
std::string_view to_string(Verdict v) noexcept;

struct RelationInstance {
  std::size_t index = 0;
  bool probe = false;
  /// Evaluation raised an error (inapplicable point); `note` says why.
  bool inapplicable = false;
  std::string note;
  std::optional<std::pair<int, int>> lattice_indices;
  std::vector<std::pair<std::string, Rational>> params;
  RelationEntry entry;

  bool counted() const { return !inapplicable && entry.converged; }
};

struct RelationReport {
  std::string relation_id;
  std::string paper_anchor;
  bool expected_identity = true;
  std::uint64_t seed = 0;
  unsigned digits = 0;
  std::size_t n_requested = 0;
  std::vector<RelationInstance> samples;
  Verdict verdict = Verdict::inconclusive;
  XReal worst_rel_residual;
  std::optional<std::size_t> counterexample;  // position in samples
  std::vector<std::string> transcription_flags;
  /// Free-form facts specific to the relation (e.g. minimum value on a grid).
  std::vector<std::pair<std::string, std::string>> details;

  std::size_t counted_random() const;
};

struct RunOptions {
  std::uint64_t seed = 0xC0FFEE;
  std::size_t samples = 100;
  unsigned threads = 1;
};

/// Every relation id understood by check_relation, in suite order.
const std::vector<std::string>& relation_ids();
bool is_relation(std::string_view id);

/// Series-only evaluation of both sides, verdict assignment, and (for the
/// closed forms) a registry update when a registry is given.
/// Throws unknown_relation.
RelationReport check_relation(std::string_view relation_id, const PrecisionCtx& ctx, const RunOptions& run,
                              FormRegistry* registry = nullptr);

RelationReport check_thomae(const PrecisionCtx& ctx, const RunOptions& run);
RelationReport check_macrobert(const PrecisionCtx& ctx, const RunOptions& run);

struct DeBrangesGrid {
  int n_max = 20;
  std::vector<Rational> alphas = {Rational(-3, 2), Rational(-1), Rational(-1, 2), Rational(1, 2),
                                  Rational(1),     Rational(2),  Rational(3)};
  std::vector<Rational> xs = {Rational(0),    Rational(1, 10), Rational(1, 5), Rational(3, 10),
                              Rational(2, 5), Rational(1, 2),  Rational(3, 5), Rational(7, 10),
                              Rational(4, 5), Rational(9, 10)};
};

/// 3F2(−n, n+α, (α+1)/2; α+1, (α+3)/2; x) summed exactly on the grid;
/// identity means strictly positive everywhere it is defined.
RelationReport check_debranges(const DeBrangesGrid& grid, const PrecisionCtx& ctx);

struct SuiteResult {
  std::uint64_t seed = 0;
  unsigned digits = 0;
  std::size_t samples = 0;
  double pole_guard = 0.0;
  std::vector<RelationReport> relations;
  std::vector<FormVerdict> closed_forms;

  /// Every relation expected to be an identity has verdict identity.
  bool passed() const;
};

RelationReport run_relation(std::string_view id, const PrecisionCtx& ctx, const RunOptions& run,
                            FormRegistry* registry);

SuiteResult run_suite(const PrecisionCtx& ctx, const RunOptions& run);

/// Calls fn(k) for k in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace watson
