#include "tubal/linalg.hpp"

#include <algorithm>

namespace tubal::linalg {
namespace {

constexpr double kRankTol = 1e-12;

template <typename M>
void require_finite(const M& m, const char* what) {
  if (!m.allFinite()) throw NumericalError(std::string(what) + " produced non-finite values");
}

}  // namespace

ThinSvd thin_svd(const MatrixXcd& a) {
  Eigen::BDCSVD<MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD failed to converge");
  ThinSvd out{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  require_finite(out.s, "SVD");
  return out;
}

Eigen::VectorXd singular_values(const MatrixXcd& a) {
  Eigen::BDCSVD<MatrixXcd> svd(a);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD failed to converge");
  Eigen::VectorXd s = svd.singularValues();
  require_finite(s, "SVD");
  return s;
}

MatrixXcd orthonormal_basis(const MatrixXcd& a) {
  const Eigen::Index cols = std::min(a.rows(), a.cols());
  Eigen::HouseholderQR<MatrixXcd> qr(a);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(a.rows(), cols);
  require_finite(q, "QR");
  return q;
}

MatrixXcd pinv_solve(const MatrixXcd& g, const MatrixXcd& b, bool* rank_deficient) {
  if (g.rows() != b.rows()) throw DimensionError("pinv_solve: row count mismatch");
  if (rank_deficient) *rank_deficient = false;
  Eigen::ColPivHouseholderQR<MatrixXcd> qr(g);
  qr.setThreshold(kRankTol);
  if (qr.rank() == g.cols()) {
    MatrixXcd x = qr.solve(b);
    require_finite(x, "QR solve");
    return x;
  }
  if (rank_deficient) *rank_deficient = true;
  Eigen::BDCSVD<MatrixXcd> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD failed to converge");
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? kRankTol * s(0) : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) inv(i) = 1.0 / s(i);
  MatrixXcd x = svd.matrixV() * (inv.asDiagonal() * (svd.matrixU().adjoint() * b));
  require_finite(x, "pseudo-inverse");
  return x;
}

}  // namespace tubal::linalg
