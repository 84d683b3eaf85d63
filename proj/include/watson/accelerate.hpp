#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "watson/xreal.hpp"

namespace watson {

/// Levin u-transform T_k^(n0) of the partial sums S_n = a_0 + ... + a_n,
/// with remainder estimates ω_n = (n+1) a_n. Needs terms up to n0 + k.
/// When `roundoff` is given it receives a first-order estimate of the
/// rounding error committed in the weighted sums.
XReal levin_u(std::span<const XReal> partial_sums, std::span<const XReal> terms,
              std::size_t n0, std::size_t k, XReal* roundoff = nullptr);

struct LevinOptions {
  XReal tol;                   // absolute below 1, relative above
  std::size_t start = 0;       // n0
  std::size_t max_terms = 2000;
};

struct Extrapolation {
  XReal value;
  XReal error_estimate;
  std::size_t order = 0;
  std::size_t terms_used = 0;
  bool converged = false;
};

/// Raises the order k until the last two differences between consecutive
/// transforms are both within tol; the larger one is the error estimate. Stops early, unconverged, once
/// the differences have grown for a dozen orders past their minimum: that is
/// rounding noise taking over.
Extrapolation accelerate_levin_u(const std::function<XReal()>& next_term, const LevinOptions& opts);

}  // namespace watson
