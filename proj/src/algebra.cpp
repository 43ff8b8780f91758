#include "tubal/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "tubal/linalg.hpp"
#include "tubal/parallel.hpp"

namespace tubal {

CTensor3 slice_product(const CTensor3& a_bar, const CTensor3& b_bar) {
  if (a_bar.cols() != b_bar.rows() || a_bar.tubes() != b_bar.tubes()) {
    throw DimensionError("slice product: inner dimensions or tube lengths differ");
  }
  CTensor3 out(a_bar.rows(), b_bar.cols(), a_bar.tubes());
  parallel_for(a_bar.tubes(), [&](std::size_t i) {
    out.slice(i).noalias() = a_bar.slice(i) * b_bar.slice(i);
  });
  return out;
}

CTensor3 slice_adjoint(const CTensor3& a_bar) {
  CTensor3 out(a_bar.cols(), a_bar.rows(), a_bar.tubes());
  for (std::size_t i = 0; i < a_bar.tubes(); ++i) out.slice(i) = a_bar.slice(i).adjoint();
  return out;
}

CTensor3 lprod(const Transform& L, const CTensor3& x, const CTensor3& y) {
  if (x.cols() != y.rows()) throw DimensionError("lprod: inner dimensions differ");
  if (x.tubes() != y.tubes()) throw DimensionError("lprod: tube lengths differ");
  return transform_inverse(L, slice_product(transform_forward(L, x), transform_forward(L, y)));
}

Tensor3 lprod(const Transform& L, const Tensor3& x, const Tensor3& y) {
  if (x.cols() != y.rows()) throw DimensionError("lprod: inner dimensions differ");
  if (x.tubes() != y.tubes()) throw DimensionError("lprod: tube lengths differ");
  return real_part(
      transform_inverse(L, slice_product(transform_forward(L, x), transform_forward(L, y))));
}

CTensor3 conj_transpose(const Transform& L, const CTensor3& a) {
  return transform_inverse(L, slice_adjoint(transform_forward(L, a)));
}

Tensor3 conj_transpose(const Transform& L, const Tensor3& a) {
  return real_part(transform_inverse(L, slice_adjoint(transform_forward(L, a))));
}

Tensor3 identity_tensor(const Transform& L, std::size_t n) {
  CTensor3 bar(n, n, L.size());
  for (std::size_t i = 0; i < L.size(); ++i) bar.slice(i).setIdentity();
  return real_part(transform_inverse(L, bar));
}

MatrixXd slice_singular_values(const CTensor3& a_bar) {
  const std::size_t r = std::min(a_bar.rows(), a_bar.cols());
  MatrixXd out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a_bar.tubes()));
  parallel_for(a_bar.tubes(), [&](std::size_t i) {
    out.col(static_cast<Eigen::Index>(i)) = linalg::singular_values(a_bar.slice(i));
  });
  return out;
}

TSVDFactors tsvd(const Transform& L, const Tensor3& a) {
  const CTensor3 a_bar = transform_forward(L, a);
  const std::size_t m = a.rows(), n = a.cols(), p = a.tubes();
  const std::size_t r = std::min(m, n);
  CTensor3 u_bar(m, r, p), s_bar_t(r, r, p), v_bar(n, r, p);
  MatrixXd sv(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(p));
  parallel_for(p, [&](std::size_t i) {
    const linalg::ThinSvd f = linalg::thin_svd(a_bar.slice(i));
    u_bar.slice(i) = f.u;
    v_bar.slice(i) = f.v;
    s_bar_t.slice(i) = f.s.cast<cplx>().asDiagonal();
    sv.col(static_cast<Eigen::Index>(i)) = f.s;
  });
  return TSVDFactors{L, transform_inverse(L, u_bar), transform_inverse(L, s_bar_t),
                     transform_inverse(L, v_bar), std::move(sv)};
}

std::vector<double> singular_values(const TSVDFactors& f) {
  const std::size_t r = f.s.rows();
  std::vector<double> sigma(r, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < f.s.tubes(); ++k) acc += std::norm(f.s(i, i, k));
    sigma[i] = std::sqrt(acc);
  }
  return sigma;
}

std::vector<double> singular_values(const Transform& L, const Tensor3& a) {
  return singular_values(tsvd(L, a));
}

std::size_t tubal_rank(const Transform& L, const Tensor3& a, double tol) {
  if (tol < 0.0) throw InvalidArgument("tubal_rank: tol must be nonnegative");
  const std::vector<double> sigma = singular_values(L, a);
  if (sigma.empty() || sigma.front() == 0.0) return 0;
  const double cut = tol * sigma.front();
  return static_cast<std::size_t>(
      std::count_if(sigma.begin(), sigma.end(), [&](double v) { return v > cut; }));
}

double tail_energy(const Transform& L, const Tensor3& a, std::size_t j) {
  const std::size_t r = std::min(a.rows(), a.cols());
  if (j < 1 || j > r + 1) throw InvalidArgument("tail_energy: j out of range");
  const std::vector<double> sigma = singular_values(L, a);
  double acc = 0.0;
  for (std::size_t i = j - 1; i < r; ++i) acc += sigma[i] * sigma[i];
  return acc;
}

}  // namespace tubal
