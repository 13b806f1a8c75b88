#pragma once

#include <utility>
#include <vector>

#include "qchan/types.hpp"

namespace qchan {

/// Kronecker product. The first factor indexes the most significant
/// subsystem, so tensor(a, b) acts on H_a (x) H_b.
CMatrix tensor(const CMatrix& a, const CMatrix& b);
CMatrix tensor(const std::vector<CMatrix>& factors);

/// Reduced matrix on the subsystems listed in `keep` (ascending order of
/// subsystem index, order preserved in the output). `dims` are the
/// subsystem dimensions, most significant first; their product must equal
/// both matrix dimensions. An empty `keep` yields the 1x1 scalar trace.
CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep);

/// Reorders subsystems: position i of the output carries the input
/// subsystem perm[i].
CMatrix permute_subsystems(const CMatrix& m, const std::vector<int>& dims,
                           const std::vector<int>& perm);

struct HermitianEig {
  RVector values;   // sorted descending
  CMatrix vectors;  // columns, matching order
};

/// Eigendecomposition of (m + m^dagger)/2. Eigenvalues descending;
/// degenerate eigenvectors stay in solver order.
HermitianEig hermitian_eig(const CMatrix& m);

/// Sum of singular values, tr sqrt(m^dagger m).
double trace_norm(const CMatrix& m);

/// -tr(h log2 h) of the symmetrized input, eigenvalues at or below the
/// clip tolerance contributing zero. The input should be positive
/// semidefinite up to tolerance; negative eigenvalues are clipped.
double entropy_bits(const CMatrix& hermitian);

/// Shannon entropy in bits. Entries must be nonnegative and sum to one
/// within tolerance.
double shannon_entropy(const std::vector<double>& p);

/// Dyadic entropy h(p) = -p log2 p - (1-p) log2(1-p), p in [0,1].
double binary_entropy(double p);

class DensityOperator {
public:
  /// Validates hermiticity, positivity (eigenvalues >= -kMatTol) and unit
  /// trace within tolerance; eigenvalues below the clip tolerance are set
  /// to zero and the operator is rebuilt from the clipped spectrum.
  explicit DensityOperator(CMatrix m);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const CMatrix& matrix() const { return mat_; }

  static DensityOperator maximally_mixed(int d);

private:
  CMatrix mat_;
};

class PureState {
public:
  explicit PureState(CVector amplitudes);

  int dim() const { return static_cast<int>(amp_.size()); }
  const CVector& amplitudes() const { return amp_; }
  CMatrix projector() const { return amp_ * amp_.adjoint(); }

  static PureState basis_state(int d, int k);

private:
  CVector amp_;
};

double von_neumann_entropy(const DensityOperator& rho);

/// Purification on R (x) Q with dim(R) = rank(rho), built from the
/// eigendecomposition: sum_i sqrt(lambda_i) |i>_R |v_i>_Q.
PureState purify(const DensityOperator& rho);

}  // namespace qchan
