#include "qchan/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qchan {

namespace {

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) {
    if (d <= 0) throw Error("subsystem dimensions must be positive");
    p *= d;
  }
  return p;
}

}  // namespace

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix tensor(const std::vector<CMatrix>& factors) {
  if (factors.empty()) throw Error("tensor: empty factor list");
  CMatrix out = factors.front();
  for (size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep) {
  const int total = product(dims);
  if (m.rows() != total || m.cols() != total)
    throw Error("partial_trace: product of dims must equal matrix dimension");
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw Error("partial_trace: subsystem index out of range");
    if (kept[k]) throw Error("partial_trace: duplicate subsystem index");
    kept[k] = true;
  }

  std::vector<int> keep_sorted;
  std::vector<int> traced;
  for (int i = 0; i < n; ++i) (kept[i] ? keep_sorted : traced).push_back(i);

  int dim_keep = 1;
  for (int i : keep_sorted) dim_keep *= dims[i];
  int dim_traced = total / dim_keep;

  // Strides of each subsystem in the flat row-major index.
  std::vector<int> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  auto flat = [&](const std::vector<int>& kept_idx,
                  const std::vector<int>& traced_idx) {
    int f = 0;
    for (size_t i = 0; i < keep_sorted.size(); ++i)
      f += kept_idx[i] * stride[keep_sorted[i]];
    for (size_t i = 0; i < traced.size(); ++i)
      f += traced_idx[i] * stride[traced[i]];
    return f;
  };

  auto unrank = [&](int x, const std::vector<int>& subs) {
    std::vector<int> idx(subs.size());
    for (int i = static_cast<int>(subs.size()) - 1; i >= 0; --i) {
      idx[i] = x % dims[subs[i]];
      x /= dims[subs[i]];
    }
    return idx;
  };

  CMatrix out = CMatrix::Zero(dim_keep, dim_keep);
  for (int r = 0; r < dim_keep; ++r) {
    auto ri = unrank(r, keep_sorted);
    for (int c = 0; c < dim_keep; ++c) {
      auto ci = unrank(c, keep_sorted);
      Complex acc(0, 0);
      for (int t = 0; t < dim_traced; ++t) {
        auto ti = unrank(t, traced);
        acc += m(flat(ri, ti), flat(ci, ti));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

CMatrix permute_subsystems(const CMatrix& m, const std::vector<int>& dims,
                           const std::vector<int>& perm) {
  const int total = product(dims);
  if (m.rows() != total || m.cols() != total)
    throw Error("permute_subsystems: dimension mismatch");
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != n)
    throw Error("permute_subsystems: permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) throw Error("permute_subsystems: invalid permutation");
    seen[p] = true;
  }

  std::vector<int> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];
  std::vector<int> new_dims(n);
  for (int i = 0; i < n; ++i) new_dims[i] = dims[perm[i]];
  std::vector<int> new_stride(n, 1);
  for (int i = n - 2; i >= 0; --i) new_stride[i] = new_stride[i + 1] * new_dims[i + 1];

  // old flat index -> new flat index
  std::vector<int> map(total);
  for (int x = 0; x < total; ++x) {
    std::vector<int> idx(n);
    int y = x;
    for (int i = n - 1; i >= 0; --i) {
      idx[i] = y % dims[i];
      y /= dims[i];
    }
    int nx = 0;
    for (int i = 0; i < n; ++i) nx += idx[perm[i]] * new_stride[i];
    map[x] = nx;
  }

  CMatrix out(total, total);
  for (int r = 0; r < total; ++r)
    for (int c = 0; c < total; ++c) out(map[r], map[c]) = m(r, c);
  return out;
}

HermitianEig hermitian_eig(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error("hermitian_eig: matrix must be square");
  CMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error("hermitian_eig: eigensolver failed to converge");
  const Eigen::Index d = m.rows();
  HermitianEig out;
  out.values.resize(d);
  out.vectors.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    out.values(i) = solver.eigenvalues()(d - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return out;
}

double trace_norm(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error("trace_norm: matrix must be square");
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

double entropy_bits(const CMatrix& hermitian) {
  auto eig = hermitian_eig(hermitian);
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    double lam = eig.values(i);
    if (lam > kEigClipTol) s -= lam * std::log2(lam);
  }
  return s;
}

double shannon_entropy(const std::vector<double>& p) {
  double sum = 0.0;
  for (double x : p) {
    if (x < -kMatTol) throw Error("shannon_entropy: negative probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kMatTol)
    throw Error("shannon_entropy: probabilities must sum to one");
  double h = 0.0;
  for (double x : p)
    if (x > kEigClipTol) h -= x * std::log2(x);
  return h;
}

double binary_entropy(double p) {
  if (p < -kMatTol || p > 1.0 + kMatTol)
    throw Error("binary_entropy: argument outside [0, 1]");
  double h = 0.0;
  if (p > kEigClipTol) h -= p * std::log2(p);
  if (1.0 - p > kEigClipTol) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

DensityOperator::DensityOperator(CMatrix m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error("density operator: matrix must be square and nonempty");
  if (max_abs_diff(m, m.adjoint()) > kMatTol)
    throw Error("density operator: matrix is not Hermitian within tolerance");
  auto eig = hermitian_eig(m);
  double trace = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    double lam = eig.values(i);
    if (lam < -kMatTol)
      throw Error("density operator: negative eigenvalue beyond tolerance");
    trace += lam;
  }
  if (std::abs(trace - 1.0) > kMatTol)
    throw Error("density operator: trace differs from one beyond tolerance");
  // Rebuild from the clipped spectrum.
  mat_ = CMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    double lam = eig.values(i);
    if (lam > kEigClipTol)
      mat_ += lam * (eig.vectors.col(i) * eig.vectors.col(i).adjoint());
  }
}

DensityOperator DensityOperator::maximally_mixed(int d) {
  return DensityOperator(CMatrix::Identity(d, d) / static_cast<double>(d));
}

PureState::PureState(CVector amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.size() == 0) throw Error("pure state: empty amplitude vector");
  if (std::abs(amp_.norm() - 1.0) > kMatTol)
    throw Error("pure state: amplitudes are not normalized");
}

PureState PureState::basis_state(int d, int k) {
  if (k < 0 || k >= d) throw Error("basis_state: index out of range");
  CVector v = CVector::Zero(d);
  v(k) = 1.0;
  return PureState(v);
}

double von_neumann_entropy(const DensityOperator& rho) {
  return entropy_bits(rho.matrix());
}

PureState purify(const DensityOperator& rho) {
  auto eig = hermitian_eig(rho.matrix());
  int rank = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) > kEigClipTol) ++rank;
  if (rank == 0) throw Error("purify: zero operator");
  const int d = rho.dim();
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(rank) * d);
  for (int i = 0; i < rank; ++i)
    psi.segment(static_cast<Eigen::Index>(i) * d, d) =
        std::sqrt(eig.values(i)) * eig.vectors.col(i);
  return PureState(psi);
}

}  // namespace qchan
