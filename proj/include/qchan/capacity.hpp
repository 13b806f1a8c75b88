#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qchan/channels.hpp"
#include "qchan/check_report.hpp"
#include "qchan/measures.hpp"
#include "qchan/optimize.hpp"

namespace qchan {

enum class EncodingClass { kStateOnly, kGeneralEncoding, kObserved };

std::string to_string(EncodingClass c);

struct CapacityEntry {
  int n = 1;
  double c_n = 0.0;      // best objective for n channel uses (raw, may be < 0)
  double per_use = 0.0;  // c_n / n
  double clipped = 0.0;  // max(0, per_use)
  CMatrix argmax_state;
  std::vector<CMatrix> argmax_encoding_kraus;  // empty when not applicable
  int best_restart = 0;
  bool converged = false;
};

struct CapacityEstimate {
  std::string channel_id;
  EncodingClass encoding_class = EncodingClass::kStateOnly;
  std::vector<CapacityEntry> per_n;
  uint64_t seed = 0;
};

struct MaxCoherentResult {
  double value = 0.0;
  CMatrix argmax;  // density matrix
  int best_restart = 0;
  bool converged = false;
};

/// Multi-start local maximization of I(rho, E) over density operators
/// parametrized as rho = L L^dag / tr(L L^dag). The result is a numerical
/// lower bound on the true maximum. Deterministic in cfg.seed. Extra
/// starting states are evaluated alongside the standard starts.
MaxCoherentResult max_coherent_info(const QuantumOperation& e,
                                    const OptimizerConfig& cfg = {},
                                    const std::vector<CMatrix>& seed_states = {});

/// Same search for the branch-averaged coherent information
/// sum_m tr(N_m(rho)) I(rho, N_m) of an observed channel.
MaxCoherentResult max_avg_coherent_info(const ObservedChannel& obs,
                                        const OptimizerConfig& cfg = {},
                                        const std::vector<CMatrix>& seed_states = {});

/// C_n/n for n = 1..n_max with C_n = max_rho I(rho, N^(x)n); finite-n
/// values only, no extrapolation to the limit.
CapacityEstimate capacity_bound_unitary(const QuantumOperation& n_op, int n_max,
                                        const OptimizerConfig& cfg = {});

/// C_n/n with C_n = max over source states rho (on source_dim^n) and
/// trace-preserving encodings C of I(rho, N^(x)n o C). Encodings carry at
/// most source-dim Kraus operators, read off a re-orthonormalized dilation
/// isometry; optimization alternates between state and encoding. The
/// identity encoding (when dimensions allow) and any seed states are
/// always part of the search, so the result dominates the state-only
/// bound up to optimizer tolerance.
CapacityEstimate capacity_bound_general(const QuantumOperation& n_op,
                                        int source_dim, int n_max,
                                        const OptimizerConfig& cfg = {},
                                        const std::vector<CMatrix>& seed_states = {});

/// Record average over measurement tuples, maximized over input states:
/// (1/n) max_rho sum_{m_1..m_n} tr(N_tuple(rho)) I(rho, N_tuple).
CapacityEstimate observed_capacity_bound(const ObservedChannel& obs, int n_max,
                                         const OptimizerConfig& cfg = {});

/// Superadditivity diagnostics for a bound sequence: c_m + c_n <= c_{m+n}
/// within twice the optimizer tolerance, and c_n <= n log2 d. `c_values`
/// holds the raw maxima C_1, C_2, ... (not divided by n).
CheckReport superadditivity_check(const std::vector<double>& c_values, int dim,
                                  double optimizer_tol);

struct ShannonResult {
  double capacity = 0.0;  // bits per symbol
  std::vector<double> input_dist;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;  // per-iteration mutual information
};

/// Classical capacity max_p(x) H(X:Y) by alternating (Blahut-Arimoto style)
/// iteration; the objective is monotone nondecreasing across iterations and
/// the loop stops once the capacity is bracketed within `threshold`.
ShannonResult shannon_capacity(const ClassicalChannel& c, double threshold = 1e-9);

/// H(X:Y) computed from the joint distribution equals
/// S(rho_X) + S(N(rho_X)) - S_e(rho_X, N) for the quantum embedding N.
CheckReport mutual_info_identity_check(const ClassicalChannel& c,
                                       const std::vector<double>& px);

/// The all-quantum version of an observed channel,
/// M(rho) = sum_m N_m(rho) (x) |m><m| on the enlarged output space.
QuantumOperation equivalence_map(const ObservedChannel& obs);

/// Per-n slack (observed bound) - (bound for the summed channel) >= 0
/// within optimizer tolerance; the observed search is seeded with the
/// unobserved argmax so the ordering holds structurally.
CheckReport observed_vs_unobserved(const ObservedChannel& obs, int n_max,
                                   const OptimizerConfig& cfg = {});

/// I(rho, M) = sum_m tr(N_m(rho)) I(rho, N_m) for the equivalence map of
/// random observed channels and random states (an exact identity).
CheckReport equivalence_identity_suite(int trials, uint64_t seed);

/// The four-Pauli channel: the one-shot bound of the summed channel is 0
/// while every measurement branch is unitary, so the observed bound is 1.
CheckReport teleportation_gap_check(const OptimizerConfig& cfg = {});

}  // namespace qchan
