#pragma once

#include <functional>

#include "qchan/types.hpp"

namespace qchan {

struct NelderMeadOptions {
  int max_iters = 2000;
  double f_tol = 1e-8;        // stop when the simplex value spread is below this
  double initial_step = 0.5;  // edge length of the starting simplex
};

/// Shared settings for the multi-start maximizers. Restarts are seeded
/// deterministically from `seed`; the winner is the best objective with
/// ties broken by lowest restart index.
struct OptimizerConfig {
  int restarts = 32;
  int max_iters = 2000;
  double f_tol = 1e-8;
  uint64_t seed = 42;
};

struct NelderMeadResult {
  RVector x;
  double value;
  int iterations;
  bool converged;
};

/// Derivative-free simplex minimization (standard reflection/expansion/
/// contraction/shrink coefficients). Deterministic for a given start.
NelderMeadResult nelder_mead_minimize(
    const std::function<double(const RVector&)>& f, const RVector& x0,
    const NelderMeadOptions& opts = {});

}  // namespace qchan
