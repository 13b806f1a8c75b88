#pragma once

#include "qchan/channels.hpp"
#include "qchan/check_report.hpp"
#include "qchan/measures.hpp"
#include "qchan/optimize.hpp"

namespace qchan {

// ---------------------------------------------------------------------
// Pointwise checkers (one instance, trials = 1 per recorded slack)
// ---------------------------------------------------------------------

/// S(rho) >= I(rho, e1) (asserted only for trace-preserving e1) and
/// I(rho, e1) >= I(rho, e2 o e1); e2 must be trace-preserving.
CheckReport check_data_processing(const DensityOperator& rho,
                                  const QuantumOperation& e1,
                                  const QuantumOperation& e2);

/// I(rho, sum_i E_i) <= sum_i tr(E_i(rho)) I(rho, E_i) / tr(sum E_i(rho)).
CheckReport check_convexity(const DensityOperator& rho,
                            const std::vector<QuantumOperation>& branches);

/// I(x rho_i, x E_i) = sum_i I(rho_i, E_i), an equality.
CheckReport check_additivity(const std::vector<DensityOperator>& states,
                             const std::vector<QuantumOperation>& ops);

/// S(rho) - S(E(rho)) <= S_e(rho, E) for trace-preserving E.
CheckReport check_araki_lieb_exchange(const DensityOperator& rho,
                                      const QuantumOperation& e);

/// S_e(rho, E) <= h(F_e) + (1 - F_e) log2(d^2 - 1) for trace-preserving E.
CheckReport check_quantum_fano(const DensityOperator& rho,
                               const QuantumOperation& e);

/// |F_e(rho + Delta, E) - F_e(rho, E)| <= 2 tr|Delta| + tr|Delta|^2.
CheckReport check_continuity(const DensityOperator& rho, const CMatrix& delta,
                             const QuantumOperation& e);

/// S(rho) <= I(rho, E) + 2 + 4 (1 - F_e(rho, D o E)) log2 d, plus the
/// stronger form with h and log2(d^2 - 1).
CheckReport check_fidelity_lemma(const DensityOperator& rho,
                                 const QuantumOperation& e,
                                 const QuantumOperation& d);

/// S(rho) <= sum_m tr(E_m(rho)) I(rho, E_m) + 2 + 4 (1 - F_e(rho, T)) log2 d
/// with T = sum_m D_m o E_m; one trace-preserving decoder per branch.
CheckReport check_generalized_fidelity_lemma(
    const DensityOperator& rho, const ObservedChannel& obs,
    const std::vector<QuantumOperation>& decoders);

/// Average coherent information of the branches at rho,
/// sum_m tr(N_m(rho)) I(rho, N_m); zero-probability branches skipped.
double observed_avg_coherent_info(const ObservedChannel& obs,
                                  const DensityOperator& rho);

// ---------------------------------------------------------------------
// Worked scenarios
// ---------------------------------------------------------------------

struct Example1Values {
  double s_rho;        // input entropy
  double i_composed;   // I(rho, N o C)
  double i_pipelined;  // I(C(rho), N)
};

/// Both coherent informations of the 4-dimensional pipelining scenario at
/// a state supported on span{|0>,|1>}.
Example1Values example1_values(const DensityOperator& rho);

/// Checks, on a 20-state grid over span{|0>,|1>}: N o C acts as the
/// identity, I(rho, N o C) = S(rho), I(C(rho), N) = 2 S(rho) - 1, and the
/// strict failure of pipelining for S(rho) < 1.
///
/// Note: the operators force I(C(rho), N) = S(rho) - 1 (the channel's
/// environment always registers one full bit), so the 2 S(rho) - 1
/// sub-assertion fails except at S(rho) = 0. The report records this
/// honestly; the strict pipelining violation itself holds everywhere.
CheckReport verify_example1();

struct Example2Values {
  double i_first;   // I(rho_1, E)
  double i_second;  // I(rho_2, E)
  double i_joint;   // I(rho_12, E (x) E)
};

/// Coherent informations of the two-pair scenario whose shared Bell state
/// makes the joint value exceed the sum of the marginals.
Example2Values example2_values();

/// Same construction with the Bell state replaced by the unentangled
/// product of its marginals; all three values collapse to zero.
Example2Values example2_values_product();

/// Asserts (I(rho_1,E), I(rho_2,E), I(rho_12,E(x)E)) = (0, 0, 2).
CheckReport verify_example2();

/// One-shot composition bounds: the best coherent information through
/// N2 o N1 (over states and encodings) exceeds neither factor's bound.
/// Threshold is the optimizer tolerance, reported in the result.
CheckReport check_composition_bounds(const QuantumOperation& n1,
                                     const QuantumOperation& n2,
                                     const OptimizerConfig& cfg);

// ---------------------------------------------------------------------
// Randomized suites (Haar-style random states, dilation-sampled random
// trace-preserving operations; deterministic in the seed)
// ---------------------------------------------------------------------

CheckReport data_processing_suite(int trials, uint64_t seed);
CheckReport convexity_suite(int trials, uint64_t seed);
CheckReport additivity_suite(int trials, uint64_t seed);
CheckReport araki_lieb_suite(int trials, uint64_t seed);
CheckReport quantum_fano_suite(int trials, uint64_t seed);
CheckReport continuity_suite(int trials, uint64_t seed);
CheckReport fidelity_lemma_suite(int trials, uint64_t seed);
CheckReport generalized_fidelity_lemma_suite(int trials, uint64_t seed);

/// F_e, S_e and I are invariant under unitary remixing of the Kraus list,
/// and agree with the values read off a dilation round-trip.
CheckReport representation_robustness_suite(int trials, uint64_t seed);

/// Pointwise generalized convexity at random observed channels:
/// the branch average at rho is at least I(rho, sum_m N_m).
CheckReport observed_pointwise_suite(int trials, uint64_t seed);

}  // namespace qchan
