#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qchan/qmath.hpp"
#include "qchan/types.hpp"

namespace qchan {

// Reject operations whose Kraus list would exceed this size (tensor powers
// of many-branch channels blow up as count^n).
inline constexpr int kKrausCap = 4096;

/// A quantum operation in operator-sum form: E(rho) = sum_i A_i rho A_i^dag
/// with sum_i A_i^dag A_i <= I. Trace preservation is decided at
/// construction and cached.
class QuantumOperation {
public:
  explicit QuantumOperation(std::vector<CMatrix> kraus);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }
  int kraus_count() const { return static_cast<int>(kraus_.size()); }
  bool is_trace_preserving() const { return trace_preserving_; }

  /// sum_i A_i^dag A_i
  CMatrix kraus_gram() const;

  static QuantumOperation identity(int d);
  static QuantumOperation from_unitary(const CMatrix& u);

private:
  int dim_in_ = 0;
  int dim_out_ = 0;
  std::vector<CMatrix> kraus_;
  bool trace_preserving_ = false;
};

struct ApplyResult {
  CMatrix output;  // unnormalized, sum_i A_i rho A_i^dag
  double weight;   // tr of the output
};

ApplyResult apply(const QuantumOperation& e, const DensityOperator& rho);

/// Linear action on an arbitrary matrix (no state validation).
CMatrix apply_matrix(const QuantumOperation& e, const CMatrix& m);

/// Composition e2 after e1; Kraus list is all products {B_j A_i}.
QuantumOperation compose(const QuantumOperation& e2, const QuantumOperation& e1);

QuantumOperation tensor_ops(const QuantumOperation& a, const QuantumOperation& b);
QuantumOperation tensor_pow(const QuantumOperation& e, int n);

/// Id_d (x) e, acting on a composite with a d-dimensional bystander first.
QuantumOperation extend_left(int d, const QuantumOperation& e);

struct TpDilation {
  CMatrix unitary;    // on Q (x) env, environment index minor
  int env_dim;        // equals the Kraus count
  CVector env_state;  // |0> of the environment
};

/// Unitary environment model of a trace-preserving operation with equal
/// input/output dimensions: tr_env(U (rho (x) |s><s|) U^dag) = E(rho).
/// Columns U(|q>|s>) = sum_i A_i|q> (x) |i>, completed to a unitary.
TpDilation dilate_tp(const QuantumOperation& e);

/// An indexed family of operations whose sum is trace-preserving (one
/// branch per measurement record).
class ObservedChannel {
public:
  explicit ObservedChannel(std::vector<QuantumOperation> branches);

  int dim_in() const { return branches_.front().dim_in(); }
  int dim_out() const { return branches_.front().dim_out(); }
  int branch_count() const { return static_cast<int>(branches_.size()); }
  const std::vector<QuantumOperation>& branches() const { return branches_; }
  const QuantumOperation& branch(int m) const { return branches_.at(m); }

  /// The unobserved channel sum_m N_m (trace-preserving).
  QuantumOperation total() const;

  /// Branches are all n-tuples (m_1 ... m_n) of tensor factors.
  ObservedChannel tensor_pow(int n) const;

private:
  std::vector<QuantumOperation> branches_;
};

struct GeneralDilation {
  CMatrix unitary;                      // on Q (x) env
  std::vector<CMatrix> env_projectors;  // complete orthogonal set on env
  CVector env_state;
  int env_dim;
};

/// Environment model of a measurement: for each branch m,
/// tr_env((I(x)P_m) U (rho (x) |s><s|) U^dag (I(x)P_m)) = N_m(rho).
GeneralDilation dilate_general(const ObservedChannel& obs);

/// A classical channel given by conditional probabilities p(y|x); column x
/// of `transition` holds the distribution of y.
class ClassicalChannel {
public:
  ClassicalChannel(int n_in, int n_out, RMatrix transition);

  int n_in() const { return n_in_; }
  int n_out() const { return n_out_; }
  const RMatrix& transition() const { return p_; }
  double prob(int y, int x) const { return p_(y, x); }

private:
  int n_in_;
  int n_out_;
  RMatrix p_;  // n_out x n_in
};

/// Embedding with Kraus operators sqrt(p(y|x)) |y><x|; maps diag(p(x)) to
/// diag(p(y)) and decoheres all off-diagonal terms.
QuantumOperation classical_to_quantum(const ClassicalChannel& c);

// ---------------------------------------------------------------------
// Named channels
// ---------------------------------------------------------------------

/// (1/2){I, sx, sy, sz}: maps every qubit state to I/2.
QuantumOperation four_pauli_channel();

/// The four-Pauli channel split by the environment measurement record:
/// branches N_m(rho) = (1/4) s_m rho s_m.
ObservedChannel pauli_observed_channel();

/// With probability eps the input qubit is replaced by an orthogonal flag
/// state |2>; otherwise embedded unchanged into the 3-level output.
QuantumOperation erasure_channel(double eps);

/// Erasure channel with the erased/not-erased record observed.
ObservedChannel erasure_observed_channel(double eps);

/// With probability delta the qubit phase is randomized; the record of
/// which alternative occurred is observed. Output stays 2-dimensional.
ObservedChannel phase_erasure_channel(double delta);

/// Erases with probability eps or phase-erases with probability delta
/// (exclusive); three observed branches on a 3-level output.
ObservedChannel mixed_erasure_channel(double eps, double delta);

/// N(rho) = sum_i |i><i| rho |i><i|: classically noiseless, kills all
/// coherences.
QuantumOperation completely_decohering_channel(int d);

/// N(rho) = sigma for every input.
QuantumOperation constant_channel(const DensityOperator& sigma);

/// 4-dimensional channel N(rho) = P12 rho P12 + U^dag P34 rho P34 U with
/// U the swap between span{|0>,|1>} and span{|2>,|3>}.
QuantumOperation example1_channel();

/// Matching encoding C(rho) = (1/2) P12 rho P12 +
/// (1/2) U P12 rho P12 U^dag + P34 rho P34; N o C is the identity on
/// states supported on span{|0>,|1>}.
QuantumOperation example1_encoding();

/// Two-qubit channel E(rho_AB) = rho_A (x) |0><0|: swaps qubit B out into
/// the environment.
QuantumOperation example2_channel();

/// Non-trace-preserving projection rho -> P12 rho P12 on a 3-level
/// system; the canonical case where S(rho) >= I(rho, E) fails.
QuantumOperation dp_failure_projection();

using NamedChannel = std::variant<QuantumOperation, ObservedChannel>;

/// String-keyed factory used by the CLI. Known names: identity, four_pauli,
/// pauli_observed, erasure, erasure_observed, phase_erasure, mixed_erasure,
/// decohering, example1, example1_encoding, example2, dp_failure.
/// Parameters: eps, delta, dim (as applicable).
NamedChannel named_channel(const std::string& name,
                           const std::map<std::string, double>& params = {});

}  // namespace qchan
