#include "watson/accelerate.hpp"

#include <vector>

namespace watson {

XReal levin_u(std::span<const XReal> partial_sums, std::span<const XReal> terms,
              std::size_t n0, std::size_t k, XReal* roundoff) {
  const mpfr_prec_t bits = partial_sums[n0].precision();
  XReal numerator(bits), denominator(bits);
  XReal numerator_abs(bits), denominator_abs(bits);

  const XReal last = XReal(static_cast<long>(n0 + k + 1), bits);
  XReal binom = XReal::one(bits);  // C(k, j)
  for (std::size_t j = 0; j <= k; ++j) {
    const std::size_t n = n0 + j;
    XReal scale = pow(XReal(static_cast<long>(n + 1), bits) / last, static_cast<long>(k) - 1);
    XReal weight = binom * scale;
    if (j % 2 == 1) weight = -weight;
    XReal inv_omega = XReal::one(bits) / (terms[n] * static_cast<long>(n + 1));
    XReal w = weight * inv_omega;
    XReal ws = w * partial_sums[n];
    numerator += ws;
    denominator += w;
    if (roundoff) {
      numerator_abs += abs(ws);
      denominator_abs += abs(w);
    }
    binom *= static_cast<long>(k - j);
    binom /= static_cast<long>(j + 1);
  }
  XReal value = numerator / denominator;
  if (roundoff) {
    XReal ulp = exp2(XReal(-static_cast<long>(bits), bits));
    *roundoff = (numerator_abs + abs(value) * denominator_abs) / abs(denominator) * ulp *
                static_cast<long>(4 * (k + 1));
  }
  return value;
}

Extrapolation accelerate_levin_u(const std::function<XReal()>& next_term, const LevinOptions& opts) {
  std::vector<XReal> terms;
  std::vector<XReal> sums;
  auto pull = [&] {
    XReal t = next_term();
    XReal s = sums.empty() ? t : sums.back() + t;
    terms.push_back(std::move(t));
    sums.push_back(std::move(s));
  };

  const std::size_t n0 = opts.start;
  while (terms.size() < n0 + 2) pull();

  Extrapolation best;
  bool have_best = false;
  XReal previous = levin_u(sums, terms, n0, 1);
  XReal previous_diff;
  bool have_previous_diff = false;

  for (std::size_t k = 2; n0 + k < opts.max_terms; ++k) {
    while (terms.size() < n0 + k + 1) pull();
    XReal roundoff;
    XReal current = levin_u(sums, terms, n0, k, &roundoff);
    XReal diff = abs(current - previous);
    // the last difference alone can undershoot the true error by a small factor
    XReal bound = (have_previous_diff ? max(diff, previous_diff) : diff) + roundoff;
    XReal tol = opts.tol * max(XReal::one(current.precision()), abs(current));

    if (!have_best || bound < best.error_estimate) {
      best = Extrapolation{current, bound, k, n0 + k + 1, false};
      have_best = true;
    }
    if (bound <= tol && have_previous_diff) {
      return Extrapolation{current, bound, k, n0 + k + 1, true};
    }
    if (k > best.order + 12) break;

    previous = std::move(current);
    previous_diff = std::move(diff);
    have_previous_diff = true;
  }
  best.terms_used = terms.size();
  return best;
}

}  // namespace watson
