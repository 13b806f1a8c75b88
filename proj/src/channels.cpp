#include "qchan/channels.hpp"

#include <Eigen/QR>
#include <cmath>

namespace qchan {

namespace {

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix ket_bra(int d_out, int i, int d_in, int j) {
  CMatrix m = CMatrix::Zero(d_out, d_in);
  m(i, j) = 1.0;
  return m;
}

// Orthonormal completion: the specified isometry columns live at
// column slots q*K of the unitary; the remaining slots are filled with an
// orthonormal basis of the complement.
CMatrix complete_to_unitary(const CMatrix& isometry, int d, int K) {
  const Eigen::Index big = static_cast<Eigen::Index>(d) * K;
  Eigen::HouseholderQR<CMatrix> qr(isometry);
  CMatrix q = qr.householderQ();
  CMatrix u = CMatrix::Zero(big, big);
  for (int col = 0; col < d; ++col)
    u.col(static_cast<Eigen::Index>(col) * K) = isometry.col(col);
  Eigen::Index next = 0;
  for (Eigen::Index slot = 0; slot < big; ++slot) {
    if (slot % K == 0 && slot / K < d) continue;
    u.col(slot) = q.col(d + next);
    ++next;
  }
  return u;
}

}  // namespace

QuantumOperation::QuantumOperation(std::vector<CMatrix> kraus)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error("quantum operation: empty Kraus list");
  if (static_cast<int>(kraus_.size()) > kKrausCap)
    throw Error("quantum operation: Kraus count exceeds cap of " +
                std::to_string(kKrausCap));
  dim_out_ = static_cast<int>(kraus_.front().rows());
  dim_in_ = static_cast<int>(kraus_.front().cols());
  if (dim_in_ == 0 || dim_out_ == 0)
    throw Error("quantum operation: empty Kraus operator");
  for (const auto& a : kraus_)
    if (a.rows() != dim_out_ || a.cols() != dim_in_)
      throw Error("quantum operation: inconsistent Kraus dimensions");

  CMatrix gram = kraus_gram();
  CMatrix deficit = CMatrix::Identity(dim_in_, dim_in_) - gram;
  auto eig = hermitian_eig(deficit);
  if (eig.values.minCoeff() < -kMatTol)
    throw Error("quantum operation: sum of A^dag A exceeds the identity");
  trace_preserving_ = max_abs_diff(gram, CMatrix::Identity(dim_in_, dim_in_)) <= kMatTol;
}

CMatrix QuantumOperation::kraus_gram() const {
  CMatrix g = CMatrix::Zero(dim_in_, dim_in_);
  for (const auto& a : kraus_) g += a.adjoint() * a;
  return g;
}

QuantumOperation QuantumOperation::identity(int d) {
  return QuantumOperation({CMatrix::Identity(d, d)});
}

QuantumOperation QuantumOperation::from_unitary(const CMatrix& u) {
  if (u.rows() != u.cols()) throw Error("from_unitary: matrix must be square");
  if (max_abs_diff(u.adjoint() * u, CMatrix::Identity(u.cols(), u.cols())) > kMatTol)
    throw Error("from_unitary: matrix is not unitary within tolerance");
  return QuantumOperation({u});
}

ApplyResult apply(const QuantumOperation& e, const DensityOperator& rho) {
  if (rho.dim() != e.dim_in())
    throw Error("apply: state dimension does not match operation input");
  CMatrix out = apply_matrix(e, rho.matrix());
  return {out, out.trace().real()};
}

CMatrix apply_matrix(const QuantumOperation& e, const CMatrix& m) {
  if (m.rows() != e.dim_in() || m.cols() != e.dim_in())
    throw Error("apply_matrix: dimension mismatch");
  CMatrix out = CMatrix::Zero(e.dim_out(), e.dim_out());
  for (const auto& a : e.kraus()) out += a * m * a.adjoint();
  return out;
}

QuantumOperation compose(const QuantumOperation& e2, const QuantumOperation& e1) {
  if (e1.dim_out() != e2.dim_in())
    throw Error("compose: inner dimensions do not match");
  long count = e1.kraus_count() * static_cast<long>(e2.kraus_count());
  if (count > kKrausCap)
    throw Error("compose: would need " + std::to_string(count) +
                " Kraus operators, cap is " + std::to_string(kKrausCap));
  std::vector<CMatrix> kraus;
  kraus.reserve(static_cast<size_t>(e1.kraus_count()) * e2.kraus_count());
  for (const auto& b : e2.kraus())
    for (const auto& a : e1.kraus()) kraus.push_back(b * a);
  return QuantumOperation(std::move(kraus));
}

QuantumOperation tensor_ops(const QuantumOperation& a, const QuantumOperation& b) {
  if (a.kraus_count() * static_cast<long>(b.kraus_count()) > kKrausCap)
    throw Error("tensor_ops: Kraus count exceeds cap");
  std::vector<CMatrix> kraus;
  kraus.reserve(static_cast<size_t>(a.kraus_count()) * b.kraus_count());
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) kraus.push_back(tensor(ka, kb));
  return QuantumOperation(std::move(kraus));
}

QuantumOperation tensor_pow(const QuantumOperation& e, int n) {
  if (n < 1) throw Error("tensor_pow: exponent must be at least 1");
  double count = 1;
  for (int i = 0; i < n; ++i) count *= e.kraus_count();
  if (count > kKrausCap)
    throw Error("tensor_pow: would need " + std::to_string(static_cast<long>(count)) +
                " Kraus operators, cap is " + std::to_string(kKrausCap));
  QuantumOperation out = e;
  for (int i = 1; i < n; ++i) out = tensor_ops(out, e);
  return out;
}

QuantumOperation extend_left(int d, const QuantumOperation& e) {
  std::vector<CMatrix> kraus;
  kraus.reserve(e.kraus().size());
  CMatrix id = CMatrix::Identity(d, d);
  for (const auto& a : e.kraus()) kraus.push_back(tensor(id, a));
  return QuantumOperation(std::move(kraus));
}

TpDilation dilate_tp(const QuantumOperation& e) {
  if (!e.is_trace_preserving())
    throw Error("dilate_tp: operation is not trace-preserving");
  if (e.dim_in() != e.dim_out())
    throw Error("dilate_tp: input and output dimensions must match");
  const int d = e.dim_in();
  const int K = e.kraus_count();
  if (K > d * d)
    throw Error("dilate_tp: more than d^2 Kraus operators; reduce the representation");

  // Isometry V|q> = sum_i A_i|q> (x) |i>, environment index minor.
  CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(d) * K, d);
  for (int q = 0; q < d; ++q)
    for (int p = 0; p < d; ++p)
      for (int i = 0; i < K; ++i)
        v(static_cast<Eigen::Index>(p) * K + i, q) = e.kraus()[i](p, q);

  TpDilation out;
  out.unitary = complete_to_unitary(v, d, K);
  out.env_dim = K;
  out.env_state = CVector::Zero(K);
  out.env_state(0) = 1.0;
  return out;
}

ObservedChannel::ObservedChannel(std::vector<QuantumOperation> branches)
    : branches_(std::move(branches)) {
  if (branches_.empty()) throw Error("observed channel: no branches");
  const int din = branches_.front().dim_in();
  const int dout = branches_.front().dim_out();
  long total_kraus = 0;
  CMatrix gram = CMatrix::Zero(din, din);
  for (const auto& b : branches_) {
    if (b.dim_in() != din || b.dim_out() != dout)
      throw Error("observed channel: branches must share dimensions");
    gram += b.kraus_gram();
    total_kraus += b.kraus_count();
  }
  if (total_kraus > kKrausCap)
    throw Error("observed channel: Kraus count exceeds cap");
  if (max_abs_diff(gram, CMatrix::Identity(din, din)) > kMatTol)
    throw Error("observed channel: branch completeness relation violated");
}

QuantumOperation ObservedChannel::total() const {
  std::vector<CMatrix> kraus;
  for (const auto& b : branches_)
    for (const auto& a : b.kraus()) kraus.push_back(a);
  return QuantumOperation(std::move(kraus));
}

ObservedChannel ObservedChannel::tensor_pow(int n) const {
  if (n < 1) throw Error("tensor_pow: exponent must be at least 1");
  double branch_total = 1;
  for (int i = 0; i < n; ++i) branch_total *= branch_count();
  if (branch_total > kKrausCap)
    throw Error("tensor_pow: would need " +
                std::to_string(static_cast<long>(branch_total)) +
                " branches, cap is " + std::to_string(kKrausCap));
  std::vector<QuantumOperation> acc = branches_;
  for (int i = 1; i < n; ++i) {
    std::vector<QuantumOperation> next;
    next.reserve(acc.size() * branches_.size());
    for (const auto& a : acc)
      for (const auto& b : branches_) next.push_back(tensor_ops(a, b));
    acc = std::move(next);
  }
  return ObservedChannel(std::move(acc));
}

GeneralDilation dilate_general(const ObservedChannel& obs) {
  const int d = obs.dim_in();
  if (obs.dim_out() != d)
    throw Error("dilate_general: input and output dimensions must match");
  std::vector<CMatrix> all;
  std::vector<int> block_of;
  for (int m = 0; m < obs.branch_count(); ++m)
    for (const auto& a : obs.branch(m).kraus()) {
      all.push_back(a);
      block_of.push_back(m);
    }
  const int T = static_cast<int>(all.size());
  if (T > d * d)
    throw Error("dilate_general: more than d^2 Kraus operators in total");

  CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(d) * T, d);
  for (int q = 0; q < d; ++q)
    for (int p = 0; p < d; ++p)
      for (int i = 0; i < T; ++i)
        v(static_cast<Eigen::Index>(p) * T + i, q) = all[i](p, q);

  GeneralDilation out;
  out.unitary = complete_to_unitary(v, d, T);
  out.env_dim = T;
  out.env_state = CVector::Zero(T);
  out.env_state(0) = 1.0;
  out.env_projectors.reserve(obs.branch_count());
  for (int m = 0; m < obs.branch_count(); ++m) {
    CMatrix p = CMatrix::Zero(T, T);
    for (int i = 0; i < T; ++i)
      if (block_of[i] == m) p(i, i) = 1.0;
    out.env_projectors.push_back(std::move(p));
  }
  return out;
}

ClassicalChannel::ClassicalChannel(int n_in, int n_out, RMatrix transition)
    : n_in_(n_in), n_out_(n_out), p_(std::move(transition)) {
  if (n_in_ <= 0 || n_out_ <= 0)
    throw Error("classical channel: symbol counts must be positive");
  if (p_.rows() != n_out_ || p_.cols() != n_in_)
    throw Error("classical channel: transition matrix must be n_out x n_in");
  for (int x = 0; x < n_in_; ++x) {
    double col = 0.0;
    for (int y = 0; y < n_out_; ++y) {
      if (p_(y, x) < -kMatTol)
        throw Error("classical channel: negative transition probability");
      col += p_(y, x);
    }
    if (std::abs(col - 1.0) > kMatTol)
      throw Error("classical channel: column " + std::to_string(x) +
                  " does not sum to one");
  }
}

QuantumOperation classical_to_quantum(const ClassicalChannel& c) {
  std::vector<CMatrix> kraus;
  kraus.reserve(static_cast<size_t>(c.n_in()) * c.n_out());
  for (int x = 0; x < c.n_in(); ++x)
    for (int y = 0; y < c.n_out(); ++y) {
      double p = c.prob(y, x);
      if (p <= 0.0) continue;
      kraus.push_back(std::sqrt(p) * ket_bra(c.n_out(), y, c.n_in(), x));
    }
  return QuantumOperation(std::move(kraus));
}

QuantumOperation four_pauli_channel() {
  return QuantumOperation({0.5 * CMatrix::Identity(2, 2), 0.5 * pauli_x(),
                           0.5 * pauli_y(), 0.5 * pauli_z()});
}

ObservedChannel pauli_observed_channel() {
  std::vector<QuantumOperation> branches;
  branches.emplace_back(std::vector<CMatrix>{0.5 * CMatrix::Identity(2, 2)});
  branches.emplace_back(std::vector<CMatrix>{0.5 * pauli_x()});
  branches.emplace_back(std::vector<CMatrix>{0.5 * pauli_y()});
  branches.emplace_back(std::vector<CMatrix>{0.5 * pauli_z()});
  return ObservedChannel(std::move(branches));
}

namespace {

CMatrix qubit_embedding_3() {
  CMatrix v = CMatrix::Zero(3, 2);
  v(0, 0) = 1.0;
  v(1, 1) = 1.0;
  return v;
}

void check_unit_interval(double x, const char* name) {
  if (x < 0.0 || x > 1.0)
    throw Error(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

QuantumOperation erasure_channel(double eps) {
  check_unit_interval(eps, "erasure probability");
  CMatrix v = qubit_embedding_3();
  std::vector<CMatrix> kraus;
  if (eps < 1.0) kraus.push_back(std::sqrt(1.0 - eps) * v);
  if (eps > 0.0) {
    kraus.push_back(std::sqrt(eps) * ket_bra(3, 2, 2, 0));
    kraus.push_back(std::sqrt(eps) * ket_bra(3, 2, 2, 1));
  }
  return QuantumOperation(std::move(kraus));
}

ObservedChannel erasure_observed_channel(double eps) {
  check_unit_interval(eps, "erasure probability");
  CMatrix v = qubit_embedding_3();
  std::vector<QuantumOperation> branches;
  if (eps < 1.0)
    branches.emplace_back(std::vector<CMatrix>{std::sqrt(1.0 - eps) * v});
  if (eps > 0.0)
    branches.emplace_back(std::vector<CMatrix>{
        std::sqrt(eps) * ket_bra(3, 2, 2, 0), std::sqrt(eps) * ket_bra(3, 2, 2, 1)});
  return ObservedChannel(std::move(branches));
}

ObservedChannel phase_erasure_channel(double delta) {
  check_unit_interval(delta, "phase-erasure probability");
  std::vector<QuantumOperation> branches;
  if (delta < 1.0)
    branches.emplace_back(
        std::vector<CMatrix>{std::sqrt(1.0 - delta) * CMatrix::Identity(2, 2)});
  if (delta > 0.0)
    branches.emplace_back(std::vector<CMatrix>{
        std::sqrt(delta) * ket_bra(2, 0, 2, 0), std::sqrt(delta) * ket_bra(2, 1, 2, 1)});
  return ObservedChannel(std::move(branches));
}

ObservedChannel mixed_erasure_channel(double eps, double delta) {
  check_unit_interval(eps, "erasure probability");
  check_unit_interval(delta, "phase-erasure probability");
  if (eps + delta > 1.0 + kMatTol)
    throw Error("erasure and phase-erasure probabilities must sum to at most 1");
  CMatrix v = qubit_embedding_3();
  std::vector<QuantumOperation> branches;
  double clean = 1.0 - eps - delta;
  if (clean > 0.0)
    branches.emplace_back(std::vector<CMatrix>{std::sqrt(clean) * v});
  if (eps > 0.0)
    branches.emplace_back(std::vector<CMatrix>{
        std::sqrt(eps) * ket_bra(3, 2, 2, 0), std::sqrt(eps) * ket_bra(3, 2, 2, 1)});
  if (delta > 0.0)
    branches.emplace_back(std::vector<CMatrix>{
        std::sqrt(delta) * v * ket_bra(2, 0, 2, 0),
        std::sqrt(delta) * v * ket_bra(2, 1, 2, 1)});
  return ObservedChannel(std::move(branches));
}

QuantumOperation completely_decohering_channel(int d) {
  if (d < 1) throw Error("decohering channel: dimension must be positive");
  std::vector<CMatrix> kraus;
  kraus.reserve(d);
  for (int i = 0; i < d; ++i) kraus.push_back(ket_bra(d, i, d, i));
  return QuantumOperation(std::move(kraus));
}

QuantumOperation constant_channel(const DensityOperator& sigma) {
  auto eig = hermitian_eig(sigma.matrix());
  const int d_out = sigma.dim();
  const int d_in = sigma.dim();
  std::vector<CMatrix> kraus;
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    double lam = eig.values(j);
    if (lam <= kEigClipTol) continue;
    for (int k = 0; k < d_in; ++k) {
      CMatrix a = CMatrix::Zero(d_out, d_in);
      a.col(k) = std::sqrt(lam) * eig.vectors.col(j);
      kraus.push_back(std::move(a));
    }
  }
  return QuantumOperation(std::move(kraus));
}

namespace {

CMatrix example1_swap() {
  CMatrix u = CMatrix::Zero(4, 4);
  u(2, 0) = 1.0;
  u(3, 1) = 1.0;
  u(0, 2) = 1.0;
  u(1, 3) = 1.0;
  return u;
}

CMatrix projector_01_4() {
  CMatrix p = CMatrix::Zero(4, 4);
  p(0, 0) = 1.0;
  p(1, 1) = 1.0;
  return p;
}

CMatrix projector_23_4() {
  CMatrix p = CMatrix::Zero(4, 4);
  p(2, 2) = 1.0;
  p(3, 3) = 1.0;
  return p;
}

}  // namespace

QuantumOperation example1_channel() {
  CMatrix u = example1_swap();
  return QuantumOperation({projector_01_4(), u.adjoint() * projector_23_4()});
}

QuantumOperation example1_encoding() {
  CMatrix u = example1_swap();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return QuantumOperation({inv_sqrt2 * projector_01_4(),
                           inv_sqrt2 * u * projector_01_4(), projector_23_4()});
}

QuantumOperation example2_channel() {
  CMatrix id = CMatrix::Identity(2, 2);
  return QuantumOperation({tensor(id, ket_bra(2, 0, 2, 0)),
                           tensor(id, ket_bra(2, 0, 2, 1))});
}

QuantumOperation dp_failure_projection() {
  CMatrix p = CMatrix::Zero(3, 3);
  p(0, 0) = 1.0;
  p(1, 1) = 1.0;
  return QuantumOperation({p});
}

NamedChannel named_channel(const std::string& name,
                           const std::map<std::string, double>& params) {
  auto get = [&](const std::string& key, double fallback,
                 bool required = false) {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    if (required) throw Error("named_channel: missing parameter '" + key + "'");
    return fallback;
  };
  if (name == "identity")
    return QuantumOperation::identity(static_cast<int>(get("dim", 2)));
  if (name == "four_pauli") return four_pauli_channel();
  if (name == "pauli_observed") return pauli_observed_channel();
  if (name == "erasure") return erasure_channel(get("eps", 0.0, true));
  if (name == "erasure_observed")
    return erasure_observed_channel(get("eps", 0.0, true));
  if (name == "phase_erasure")
    return phase_erasure_channel(get("delta", 0.0, true));
  if (name == "mixed_erasure")
    return mixed_erasure_channel(get("eps", 0.0, true), get("delta", 0.0, true));
  if (name == "decohering")
    return completely_decohering_channel(static_cast<int>(get("dim", 2)));
  if (name == "example1") return example1_channel();
  if (name == "example1_encoding") return example1_encoding();
  if (name == "example2") return example2_channel();
  if (name == "dp_failure") return dp_failure_projection();
  throw Error("named_channel: unknown channel name '" + name + "'");
}

}  // namespace qchan
