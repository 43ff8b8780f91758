#include "tubal/transform.hpp"

#include <cmath>
#include <numbers>

#include "tubal/kernels.hpp"

namespace tubal {

std::string_view to_string(TransformKind kind) noexcept {
  switch (kind) {
    case TransformKind::dft: return "dft";
    case TransformKind::dct: return "dct";
    case TransformKind::u: return "u";
    case TransformKind::identity: return "identity";
  }
  return "?";
}

TransformKind parse_transform_kind(std::string_view name) {
  if (name == "dft") return TransformKind::dft;
  if (name == "dct") return TransformKind::dct;
  if (name == "u") return TransformKind::u;
  if (name == "identity") return TransformKind::identity;
  throw InvalidArgument("unknown transform '" + std::string(name) + "'");
}

Transform::Transform(TransformKind kind, MatrixXcd matrix, MatrixXcd inverse, double rho,
                     bool real_valued)
    : kind_(kind),
      matrix_(std::move(matrix)),
      inverse_(std::move(inverse)),
      rho_(rho),
      real_valued_(real_valued) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols() ||
      inverse_.rows() != matrix_.rows() || inverse_.cols() != matrix_.cols()) {
    throw DimensionError("transform matrix must be square and nonempty");
  }
}

Transform make_dft(std::size_t p) {
  if (p == 0) throw InvalidArgument("transform size must be positive");
  const auto n = static_cast<Eigen::Index>(p);
  MatrixXcd F(n, n);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = 0; k < p; ++k) {
      const std::size_t e = (j * k) % p;
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(p);
      F(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          e == 0 ? cplx(1.0, 0.0) : cplx(std::cos(angle), std::sin(angle));
    }
  }
  MatrixXcd Finv = F.adjoint() / static_cast<double>(p);
  return Transform(TransformKind::dft, std::move(F), std::move(Finv), static_cast<double>(p), false);
}

Transform make_dct(std::size_t p) {
  if (p == 0) throw InvalidArgument("transform size must be positive");
  const auto n = static_cast<Eigen::Index>(p);
  const double dp = static_cast<double>(p);
  MatrixXd C(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double alpha = k == 0 ? std::sqrt(1.0 / dp) : std::sqrt(2.0 / dp);
    for (Eigen::Index j = 0; j < n; ++j) {
      C(k, j) = alpha * std::cos(std::numbers::pi * (2.0 * static_cast<double>(j) + 1.0) *
                                 static_cast<double>(k) / (2.0 * dp));
    }
  }
  MatrixXcd L = C.cast<cplx>();
  MatrixXcd Linv = C.transpose().cast<cplx>();
  return Transform(TransformKind::dct, std::move(L), std::move(Linv), 1.0, true);
}

Transform make_identity(std::size_t p) {
  if (p == 0) throw InvalidArgument("transform size must be positive");
  const auto n = static_cast<Eigen::Index>(p);
  MatrixXcd I = MatrixXcd::Identity(n, n);
  return Transform(TransformKind::identity, I, I, 1.0, true);
}

Transform make_u_transform(const Tensor3& a) {
  if (frob_norm(a) == 0.0) throw InvalidArgument("U transform needs a nonzero tensor");
  const auto p = static_cast<Eigen::Index>(a.tubes());
  const auto mn = static_cast<Eigen::Index>(a.slice_size());
  // Columns of Wt are the vectorized slices: Wt is the transposed mode-3 unfolding.
  Eigen::Map<const MatrixXd> Wt(a.data().data(), mn, p);
  // W^T = V S U^T, so the right factor of W^T holds the left singular vectors of W.
  Eigen::BDCSVD<MatrixXd> svd(Wt, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD of mode-3 unfolding failed");
  const MatrixXd& U = svd.matrixV();
  MatrixXcd L = U.transpose().cast<cplx>();
  MatrixXcd Linv = U.cast<cplx>();
  return Transform(TransformKind::u, std::move(L), std::move(Linv), 1.0, true);
}

Transform make_transform(TransformKind kind, const Tensor3& a) {
  switch (kind) {
    case TransformKind::dft: return make_dft(a.tubes());
    case TransformKind::dct: return make_dct(a.tubes());
    case TransformKind::identity: return make_identity(a.tubes());
    case TransformKind::u: return make_u_transform(a);
  }
  throw InvalidArgument("unknown transform kind");
}

namespace {

template <typename T>
CTensor3 apply(const MatrixXcd& M, const BasicTensor3<T>& a) {
  if (static_cast<std::size_t>(M.cols()) != a.tubes()) {
    throw DimensionError("tube length " + std::to_string(a.tubes()) +
                         " does not match transform size " + std::to_string(M.cols()));
  }
  CTensor3 out(a.rows(), a.cols(), a.tubes());
  kernels::apply_mode3(M, a.data(), out.data(), a.slice_size());
  return out;
}

}  // namespace

CTensor3 transform_forward(const Transform& L, const Tensor3& a) { return apply(L.matrix(), a); }

CTensor3 transform_forward(const Transform& L, const CTensor3& a) { return apply(L.matrix(), a); }

CTensor3 transform_inverse(const Transform& L, const CTensor3& a_bar) {
  return apply(L.inverse(), a_bar);
}

}  // namespace tubal
