#include "tubal/reference.hpp"

#include <bit>

namespace tubal::reference {
namespace {

CTensor3 tubewise(const MatrixXcd& M, const CTensor3& a) {
  const std::size_t p = a.tubes();
  if (static_cast<std::size_t>(M.cols()) != p) throw DimensionError("tube length mismatch");
  CTensor3 out(a.dims());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t r = 0; r < p; ++r) {
        cplx acc(0.0, 0.0);
        for (std::size_t k = 0; k < p; ++k)
          acc += M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) * a(i, j, k);
        out(i, j, r) = acc;
      }
    }
  }
  return out;
}

}  // namespace

CTensor3 transform_forward(const Transform& L, const CTensor3& a) { return tubewise(L.matrix(), a); }

CTensor3 transform_inverse(const Transform& L, const CTensor3& a_bar) {
  return tubewise(L.inverse(), a_bar);
}

CTensor3 lprod(const Transform& L, const CTensor3& x, const CTensor3& y) {
  if (x.cols() != y.rows() || x.tubes() != y.tubes()) throw DimensionError("lprod: shape mismatch");
  const CTensor3 xb = reference::transform_forward(L, x);
  const CTensor3 yb = reference::transform_forward(L, y);
  CTensor3 zb(x.rows(), y.cols(), x.tubes());
  for (std::size_t k = 0; k < x.tubes(); ++k)
    for (std::size_t j = 0; j < y.cols(); ++j)
      for (std::size_t i = 0; i < x.rows(); ++i) {
        cplx acc(0.0, 0.0);
        for (std::size_t t = 0; t < x.cols(); ++t) acc += xb(i, t, k) * yb(t, j, k);
        zb(i, j, k) = acc;
      }
  return reference::transform_inverse(L, zb);
}

Tensor3 tprod_circ(const Tensor3& a, const Tensor3& b) {
  if (a.cols() != b.rows() || a.tubes() != b.tubes()) throw DimensionError("tprod_circ: shape mismatch");
  const std::size_t n1 = a.rows(), n2 = a.cols(), n4 = b.cols(), p = a.tubes();
  // circ(A): block (r, c) is A^((r - c) mod p).
  MatrixXd circ(static_cast<Eigen::Index>(n1 * p), static_cast<Eigen::Index>(n2 * p));
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < p; ++c)
      circ.block(static_cast<Eigen::Index>(r * n1), static_cast<Eigen::Index>(c * n2),
                 static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n2)) =
          a.slice((r + p - c) % p);
  // vec(B) stacks the frontal slices vertically.
  MatrixXd vb(static_cast<Eigen::Index>(n2 * p), static_cast<Eigen::Index>(n4));
  for (std::size_t k = 0; k < p; ++k)
    vb.block(static_cast<Eigen::Index>(k * n2), 0, static_cast<Eigen::Index>(n2),
             static_cast<Eigen::Index>(n4)) = b.slice(k);
  const MatrixXd prod = circ * vb;
  Tensor3 out(n1, n4, p);
  for (std::size_t k = 0; k < p; ++k)
    out.slice(k) = prod.block(static_cast<Eigen::Index>(k * n1), 0, static_cast<Eigen::Index>(n1),
                              static_cast<Eigen::Index>(n4));
  return out;
}

void hadamard_apply(std::span<double> v) {
  const std::size_t n = v.size();
  if (!std::has_single_bit(n)) throw InvalidArgument("Hadamard order must be a power of two");
  MatrixXd H = MatrixXd::Ones(1, 1);
  while (static_cast<std::size_t>(H.rows()) < n) {
    const Eigen::Index h = H.rows();
    MatrixXd next(2 * h, 2 * h);
    next << H, H, H, -H;
    H = std::move(next);
  }
  Eigen::Map<Eigen::VectorXd> x(v.data(), static_cast<Eigen::Index>(n));
  const Eigen::VectorXd y = H * x;
  x = y;
}

}  // namespace tubal::reference
