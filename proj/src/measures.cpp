#include "qchan/measures.hpp"

#include <cmath>

#include "qchan/optimize.hpp"
#include "qchan/random.hpp"

namespace qchan {

namespace {

double operation_weight(const DensityOperator& rho, const QuantumOperation& e) {
  if (rho.dim() != e.dim_in())
    throw Error("state dimension does not match operation input");
  double w = apply(e, rho).weight;
  if (w <= kEigClipTol)
    throw Error("operation has negligible weight on this state (impossible branch)");
  return w;
}

// Orthonormal basis of range(P); validates that P is a projector.
CMatrix projector_basis(const CMatrix& p) {
  if (p.rows() != p.cols()) throw Error("projector must be square");
  if (max_abs_diff(p, p.adjoint()) > kMatTol ||
      max_abs_diff(p * p, p) > kMatTol)
    throw Error("matrix is not a projector within tolerance");
  auto eig = hermitian_eig(p);
  int rank = 0;
  while (rank < eig.values.size() && eig.values(rank) > 0.5) ++rank;
  if (rank == 0) throw Error("projector has rank zero");
  return eig.vectors.leftCols(rank);
}

double pure_fidelity(const CVector& psi, const QuantumOperation& e) {
  if (e.dim_in() != e.dim_out())
    throw Error("state fidelity needs equal input and output dimensions");
  CMatrix out = apply_matrix(e, psi * psi.adjoint());
  return (psi.adjoint() * out * psi)(0, 0).real();
}

}  // namespace

CMatrix w_matrix(const DensityOperator& rho, const QuantumOperation& e) {
  double w = operation_weight(rho, e);
  const auto& kraus = e.kraus();
  const int k = static_cast<int>(kraus.size());
  std::vector<CMatrix> rows(k);
  for (int i = 0; i < k; ++i) rows[i] = kraus[i] * rho.matrix();
  CMatrix wm(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      // tr(A_i rho A_j^dag) as an entrywise sum against conj(A_j)
      wm(i, j) = rows[i].cwiseProduct(kraus[j].conjugate()).sum() / w;
  return 0.5 * (wm + wm.adjoint());
}

double entanglement_fidelity(const DensityOperator& rho, const QuantumOperation& e) {
  if (e.dim_in() != e.dim_out())
    throw Error("entanglement fidelity needs equal input and output dimensions");
  double w = operation_weight(rho, e);
  double acc = 0.0;
  for (const auto& a : e.kraus()) acc += std::norm((a * rho.matrix()).trace());
  return acc / w;
}

double entropy_exchange(const DensityOperator& rho, const QuantumOperation& e) {
  return entropy_bits(w_matrix(rho, e));
}

double coherent_information(const DensityOperator& rho, const QuantumOperation& e) {
  double w = operation_weight(rho, e);
  CMatrix out = apply(e, rho).output / w;
  return entropy_bits(out) - entropy_exchange(rho, e);
}

FanoBounds quantum_fano_bound(double fe, int d) {
  if (fe < -kMatTol || fe > 1.0 + kMatTol)
    throw Error("quantum_fano_bound: fidelity outside [0, 1]");
  if (d < 2) throw Error("quantum_fano_bound: dimension must be at least 2");
  fe = std::min(1.0, std::max(0.0, fe));
  FanoBounds b;
  b.tight = binary_entropy(fe) +
            (1.0 - fe) * std::log2(static_cast<double>(d) * d - 1.0);
  b.loose = 1.0 + 2.0 * (1.0 - fe) * std::log2(static_cast<double>(d));
  return b;
}

double continuity_bound(const CMatrix& delta) {
  if (max_abs_diff(delta, delta.adjoint()) > kMatTol)
    throw Error("continuity_bound: perturbation is not Hermitian");
  if (std::abs(delta.trace()) > kMatTol)
    throw Error("continuity_bound: perturbation is not traceless");
  double t = trace_norm(delta);
  return 2.0 * t + t * t;
}

double continuity_slack(const DensityOperator& rho, const CMatrix& delta,
                        const QuantumOperation& e) {
  if (!e.is_trace_preserving())
    throw Error("continuity_slack: operation must be trace-preserving");
  double bound = continuity_bound(delta);
  DensityOperator shifted(rho.matrix() + delta);
  double diff = std::abs(entanglement_fidelity(shifted, e) -
                         entanglement_fidelity(rho, e));
  return bound - diff;
}

double subspace_fidelity(const CMatrix& p, const QuantumOperation& e,
                         const SubspaceFidelityConfig& cfg) {
  if (!e.is_trace_preserving())
    throw Error("subspace_fidelity: operation must be trace-preserving");
  CMatrix basis = projector_basis(p);
  if (basis.rows() != e.dim_in())
    throw Error("subspace_fidelity: projector dimension mismatch");
  const int r = static_cast<int>(basis.cols());

  auto state_of = [&](const RVector& x) {
    CVector c(r);
    for (int i = 0; i < r; ++i) c(i) = Complex(x(2 * i), x(2 * i + 1));
    double norm = c.norm();
    if (norm < 1e-14) {
      c = CVector::Zero(r);
      c(0) = 1.0;
      norm = 1.0;
    }
    return CVector(basis * (c / norm));
  };
  auto objective = [&](const RVector& x) { return pure_fidelity(state_of(x), e); };

  NelderMeadOptions opts;
  opts.max_iters = cfg.max_iters;
  opts.f_tol = cfg.f_tol;
  double best = std::numeric_limits<double>::infinity();
  Rng rng(cfg.seed);
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    RVector x0(2 * r);
    if (restart < r) {
      // basis starts, then random ones
      x0.setZero();
      x0(2 * restart) = 1.0;
    } else {
      for (int i = 0; i < 2 * r; ++i) x0(i) = rng.normal();
    }
    auto res = nelder_mead_minimize(objective, x0, opts);
    best = std::min(best, res.value);
  }
  return best;
}

double average_pure_fidelity(
    const std::vector<std::pair<PureState, double>>& ensemble,
    const QuantumOperation& e) {
  if (ensemble.empty()) throw Error("average_pure_fidelity: empty ensemble");
  double total_p = 0.0;
  for (const auto& [psi, prob] : ensemble) {
    if (prob < -kMatTol) throw Error("average_pure_fidelity: negative probability");
    total_p += prob;
  }
  if (std::abs(total_p - 1.0) > kMatTol)
    throw Error("average_pure_fidelity: probabilities must sum to one");
  double acc = 0.0;
  for (const auto& [psi, prob] : ensemble)
    acc += prob * pure_fidelity(psi.amplitudes(), e);
  return acc;
}

MonteCarloEstimate average_subspace_fidelity(const CMatrix& p,
                                             const QuantumOperation& e,
                                             int samples, uint64_t seed) {
  if (samples < 2) throw Error("average_subspace_fidelity: need at least 2 samples");
  CMatrix basis = projector_basis(p);
  const int r = static_cast<int>(basis.cols());
  Rng rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    CVector c(r);
    for (int i = 0; i < r; ++i) c(i) = Complex(rng.normal(), rng.normal());
    c.normalize();
    double f = pure_fidelity(CVector(basis * c), e);
    sum += f;
    sum_sq += f * f;
  }
  MonteCarloEstimate est;
  est.samples = samples;
  est.mean = sum / samples;
  double var = (sum_sq - samples * est.mean * est.mean) / (samples - 1);
  est.std_error = std::sqrt(std::max(0.0, var) / samples);
  return est;
}

TypicalProjector typical_projector(const DensityOperator& rho, int n, double eps) {
  if (n < 1) throw Error("typical_projector: n must be at least 1");
  if (eps < 0) throw Error("typical_projector: eps must be nonnegative");
  const int d = rho.dim();
  double total = std::pow(static_cast<double>(d), n);
  if (total > kKrausCap)
    throw Error("typical_projector: dim^n exceeds matrix size cap");
  const int big = static_cast<int>(total);

  auto eig = hermitian_eig(rho.matrix());
  double s = von_neumann_entropy(rho);

  TypicalProjector out;
  out.projector = CMatrix::Zero(big, big);
  out.weight = 0.0;

  std::vector<int> idx(n, 0);
  for (int flat = 0; flat < big; ++flat) {
    int x = flat;
    for (int i = n - 1; i >= 0; --i) {
      idx[i] = x % d;
      x /= d;
    }
    double lam = 1.0;
    for (int i = 0; i < n; ++i) lam *= eig.values(idx[i]);
    if (lam <= kEigClipTol) continue;
    double rate = -std::log2(lam) / n;
    if (std::abs(rate - s) > eps) continue;
    CVector v = CVector::Ones(1);
    for (int i = 0; i < n; ++i) {
      CVector next(v.size() * d);
      for (Eigen::Index a = 0; a < v.size(); ++a)
        next.segment(a * d, d) = v(a) * eig.vectors.col(idx[i]);
      v = next;
    }
    out.projector += v * v.adjoint();
    out.weight += lam;
  }
  return out;
}

}  // namespace qchan
