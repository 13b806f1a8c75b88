#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qchan/channels.hpp"
#include "qchan/qmath.hpp"

namespace qchan {

/// Seeded generator; all randomized suites and optimizers draw from this
/// so that results are reproducible from the seed alone.
class Rng {
public:
  explicit Rng(uint64_t seed) : seed_(seed), gen_(seed) {}

  double uniform() { return unif_(gen_); }
  double normal() { return norm_(gen_); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  uint64_t seed() const { return seed_; }

  /// Independent child stream, for per-restart or per-trial decoupling.
  Rng child(uint64_t index) const;

private:
  uint64_t seed_;
  std::mt19937_64 gen_;
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
  std::normal_distribution<double> norm_{0.0, 1.0};
};

/// Complex Gaussian matrix orthonormalized by QR, phases fixed so the
/// result is Haar-like and deterministic.
CMatrix random_unitary(int d, Rng& rng);

PureState random_pure_state(int d, Rng& rng);

/// Partial trace of a random pure state on Q (x) R with the given rank of R.
DensityOperator random_density_rank(int d, int rank, Rng& rng);

/// Rank drawn uniformly from {1, ..., d}.
DensityOperator random_density(int d, Rng& rng);

/// Trace-preserving operation read off a random dilation unitary with the
/// given environment dimension; Kraus count equals env_dim.
QuantumOperation random_tp_operation_env(int d, int env_dim, Rng& rng);

/// Environment dimension drawn uniformly from {1, ..., d^2}.
QuantumOperation random_tp_operation(int d, Rng& rng);

/// Random trace-preserving operation split into the given number of
/// branches (each branch gets at least one Kraus operator).
ObservedChannel random_observed_channel(int d, int branches, Rng& rng);

/// Traceless Hermitian perturbation scaled to the requested trace norm.
CMatrix random_traceless_hermitian(int d, double target_trace_norm, Rng& rng);

std::vector<double> random_distribution(int n, Rng& rng);

ClassicalChannel random_classical_channel(int n_in, int n_out, Rng& rng);

std::vector<std::pair<PureState, double>> random_pure_ensemble(int d, int count,
                                                               Rng& rng);

}  // namespace qchan
