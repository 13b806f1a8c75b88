// Independent reference implementations used to pin expected values.
// Everything here goes through the purification (R (x) Q) picture, not the
// Kraus-trace formulas the library uses, so agreement is a real check.
#pragma once

#include "qchan/channels.hpp"
#include "qchan/measures.hpp"
#include "qchan/qmath.hpp"

namespace qchan::testing {

struct JointEvolution {
  CMatrix joint;  // normalized state on R (x) Q' after I (x) E
  double weight;
  int r_dim;
};

inline JointEvolution evolve_purification(const DensityOperator& rho,
                                          const QuantumOperation& e) {
  PureState psi = purify(rho);
  const int r_dim = psi.dim() / rho.dim();
  CMatrix joint = psi.projector();
  CMatrix out = apply_matrix(extend_left(r_dim, e), joint);
  double w = out.trace().real();
  return {out / w, w, r_dim};
}

inline double oracle_entanglement_fidelity(const DensityOperator& rho,
                                           const QuantumOperation& e) {
  PureState psi = purify(rho);
  const int r_dim = psi.dim() / rho.dim();
  CMatrix evolved = apply_matrix(extend_left(r_dim, e), psi.projector());
  double w = evolved.trace().real();
  Complex overlap = (psi.amplitudes().adjoint() * evolved * psi.amplitudes())(0, 0);
  return overlap.real() / w;
}

inline double oracle_entropy_exchange(const DensityOperator& rho,
                                      const QuantumOperation& e) {
  auto ev = evolve_purification(rho, e);
  // purity of the total R Q E state: S(E') = S(R'Q')
  return entropy_bits(ev.joint);
}

inline double oracle_coherent_information(const DensityOperator& rho,
                                          const QuantumOperation& e) {
  auto ev = evolve_purification(rho, e);
  CMatrix q_marginal =
      partial_trace(ev.joint, {ev.r_dim, e.dim_out()}, {1});
  return entropy_bits(q_marginal) - entropy_bits(ev.joint);
}

}  // namespace qchan::testing
