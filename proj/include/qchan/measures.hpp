#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qchan/channels.hpp"
#include "qchan/qmath.hpp"

namespace qchan {

/// Normalized environment state of the operation acting on rho:
/// W_ij = tr(A_i rho A_j^dag) / tr(E(rho)), symmetrized. Hermitian,
/// positive semidefinite, unit trace. Throws when tr(E(rho)) is
/// negligible (an impossible branch).
CMatrix w_matrix(const DensityOperator& rho, const QuantumOperation& e);

/// F_e = sum_i |tr(A_i rho)|^2 / tr(E(rho)); how well the state and its
/// entanglement survive the operation. Representation independent.
double entanglement_fidelity(const DensityOperator& rho, const QuantumOperation& e);

/// S_e = S(W): entropy acquired by an initially pure environment (bits).
double entropy_exchange(const DensityOperator& rho, const QuantumOperation& e);

/// I = S(E(rho)/tr E(rho)) - S_e(rho, E); may be negative.
double coherent_information(const DensityOperator& rho, const QuantumOperation& e);

struct FanoBounds {
  double tight;  // h(F_e) + (1 - F_e) log2(d^2 - 1)
  double loose;  // 1 + 2 (1 - F_e) log2 d
};

/// Upper bounds on the entropy exchange in terms of the entanglement
/// fidelity and the system dimension.
FanoBounds quantum_fano_bound(double fe, int d);

/// 2 tr|Delta| + (tr|Delta|)^2: bound on |F_e(rho+Delta,E) - F_e(rho,E)|
/// for trace-preserving E and traceless Hermitian Delta.
double continuity_bound(const CMatrix& delta);

/// bound - |F_e(rho+Delta, E) - F_e(rho, E)|; nonnegative up to tolerance
/// when the preconditions hold.
double continuity_slack(const DensityOperator& rho, const CMatrix& delta,
                        const QuantumOperation& e);

struct SubspaceFidelityConfig {
  int restarts = 32;
  int max_iters = 2000;
  double f_tol = 1e-10;
  uint64_t seed = 42;
};

/// Numerical minimum of <psi|E(|psi><psi|)|psi> over unit vectors in
/// range(P), by multi-start local minimization; an upper bound on the true
/// minimum. E must be trace-preserving, P a projector.
double subspace_fidelity(const CMatrix& p, const QuantumOperation& e,
                         const SubspaceFidelityConfig& cfg = {});

/// sum_i p_i <psi_i|E(|psi_i><psi_i|)|psi_i>; an upper bound on
/// F_e(rho_ensemble, E).
double average_pure_fidelity(
    const std::vector<std::pair<PureState, double>>& ensemble,
    const QuantumOperation& e);

struct MonteCarloEstimate {
  double mean;
  double std_error;
  int samples;
};

/// Monte-Carlo estimate of the average pure-state fidelity over the
/// unitarily invariant measure on range(P).
MonteCarloEstimate average_subspace_fidelity(const CMatrix& p,
                                             const QuantumOperation& e,
                                             int samples, uint64_t seed);

struct TypicalProjector {
  CMatrix projector;  // on dim^n
  double weight;      // tr(P rho^(x)n P)
};

/// Projector onto eigenvectors of rho^(x)n whose eigenvalue lambda
/// satisfies |-(1/n) log2 lambda - S(rho)| <= eps.
TypicalProjector typical_projector(const DensityOperator& rho, int n, double eps);

/// One computed fidelity with a human-readable description of which
/// fidelity it is and on what inputs.
struct FidelityReport {
  double value;
  std::string context;
};

}  // namespace qchan
