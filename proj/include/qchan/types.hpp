#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qchan {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// Eigenvalues with magnitude below this are treated as exact zeros.
inline constexpr double kEigClipTol = 1e-12;

// Module-wide tolerance for matrix equality and invariant validation.
inline constexpr double kMatTol = 1e-9;

// Thrown on invalid inputs and violated preconditions.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline CMatrix dagger(const CMatrix& m) { return m.adjoint(); }

// Largest absolute entry of a - b.
inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return (a - b).cwiseAbs().maxCoeff();
}

inline bool approx_equal(const CMatrix& a, const CMatrix& b,
                         double tol = kMatTol) {
  return max_abs_diff(a, b) <= tol;
}

}  // namespace qchan
