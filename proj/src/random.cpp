#include "qchan/random.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

namespace qchan {

Rng Rng::child(uint64_t index) const {
  // splitmix-style hash of the base seed and index
  uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return Rng(z ^ (z >> 31));
}

CMatrix random_unitary(int d, Rng& rng) {
  CMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    Complex diag = r(j, j);
    double mag = std::abs(diag);
    q.col(j) *= (mag > 1e-300) ? diag / mag : Complex(1, 0);
  }
  return q;
}

PureState random_pure_state(int d, Rng& rng) {
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(rng.normal(), rng.normal());
  v.normalize();
  return PureState(v);
}

DensityOperator random_density_rank(int d, int rank, Rng& rng) {
  if (rank < 1 || rank > d) throw Error("random_density_rank: invalid rank");
  PureState joint = random_pure_state(d * rank, rng);
  CMatrix full = joint.projector();
  // ordering Q (x) R, trace out R
  CMatrix reduced = partial_trace(full, {d, rank}, {0});
  return DensityOperator(reduced);
}

DensityOperator random_density(int d, Rng& rng) {
  return random_density_rank(d, rng.uniform_int(1, d), rng);
}

QuantumOperation random_tp_operation_env(int d, int env_dim, Rng& rng) {
  if (env_dim < 1) throw Error("random_tp_operation_env: invalid environment");
  CMatrix u = random_unitary(d * env_dim, rng);
  // A_e = (I (x) <e|) U (I (x) |0>), environment index minor
  std::vector<CMatrix> kraus(env_dim, CMatrix::Zero(d, d));
  for (int e = 0; e < env_dim; ++e)
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        kraus[e](p, q) = u(p * env_dim + e, q * env_dim + 0);
  return QuantumOperation(std::move(kraus));
}

QuantumOperation random_tp_operation(int d, Rng& rng) {
  return random_tp_operation_env(d, rng.uniform_int(1, d * d), rng);
}

ObservedChannel random_observed_channel(int d, int branches, Rng& rng) {
  if (branches < 1) throw Error("random_observed_channel: need a branch");
  if (branches > d * d)
    throw Error("random_observed_channel: more branches than d^2 Kraus operators");
  int env = rng.uniform_int(branches, d * d);
  QuantumOperation total = random_tp_operation_env(d, env, rng);
  // contiguous split at branches-1 distinct interior cut points
  std::vector<int> interior(env - 1);
  for (int i = 0; i < env - 1; ++i) interior[i] = i + 1;
  for (int i = static_cast<int>(interior.size()) - 1; i > 0; --i)
    std::swap(interior[i], interior[rng.uniform_int(0, i)]);
  std::vector<int> cut(interior.begin(), interior.begin() + (branches - 1));
  cut.push_back(0);
  cut.push_back(env);
  std::sort(cut.begin(), cut.end());
  std::vector<QuantumOperation> out;
  out.reserve(branches);
  for (int b = 0; b < branches; ++b) {
    std::vector<CMatrix> ops(total.kraus().begin() + cut[b],
                             total.kraus().begin() + cut[b + 1]);
    out.emplace_back(std::move(ops));
  }
  return ObservedChannel(std::move(out));
}

CMatrix random_traceless_hermitian(int d, double target_trace_norm, Rng& rng) {
  CMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  CMatrix h = 0.5 * (g + g.adjoint());
  h -= (h.trace() / static_cast<double>(d)) * CMatrix::Identity(d, d);
  double t = trace_norm(h);
  if (t < 1e-14) return CMatrix::Zero(d, d);
  return h * (target_trace_norm / t);
}

std::vector<double> random_distribution(int n, Rng& rng) {
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& x : p) {
    x = -std::log(std::max(rng.uniform(), 1e-300));
    sum += x;
  }
  for (double& x : p) x /= sum;
  return p;
}

ClassicalChannel random_classical_channel(int n_in, int n_out, Rng& rng) {
  RMatrix p(n_out, n_in);
  for (int x = 0; x < n_in; ++x) {
    auto col = random_distribution(n_out, rng);
    for (int y = 0; y < n_out; ++y) p(y, x) = col[y];
  }
  return ClassicalChannel(n_in, n_out, std::move(p));
}

std::vector<std::pair<PureState, double>> random_pure_ensemble(int d, int count,
                                                               Rng& rng) {
  auto probs = random_distribution(count, rng);
  std::vector<std::pair<PureState, double>> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.emplace_back(random_pure_state(d, rng), probs[i]);
  return out;
}

}  // namespace qchan
