#pragma once

#include <Eigen/Dense>

#include "tubal/tensor.hpp"

namespace tubal::linalg {

struct ThinSvd {
  MatrixXcd u;
  Eigen::VectorXd s;  // nonincreasing
  MatrixXcd v;
};

/// Thin SVD a = u * diag(s) * v^H. Throws NumericalError on failure or non-finite output.
ThinSvd thin_svd(const MatrixXcd& a);
Eigen::VectorXd singular_values(const MatrixXcd& a);

/// Economy Householder QR; returns the rows x min(rows, cols) orthonormal factor.
MatrixXcd orthonormal_basis(const MatrixXcd& a);

/// Least-squares solution g^+ * b. Uses column-pivoted QR (threshold 1e-12) when g
/// has full column rank, otherwise an SVD pseudo-inverse with cutoff 1e-12 * sigma_max.
/// `rank_deficient` (optional) is set when the fallback was taken.
MatrixXcd pinv_solve(const MatrixXcd& g, const MatrixXcd& b, bool* rank_deficient = nullptr);

}  // namespace tubal::linalg
