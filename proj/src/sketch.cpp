#include "tubal/sketch.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <vector>

#include "tubal/algebra.hpp"
#include "tubal/kernels.hpp"
#include "tubal/parallel.hpp"

namespace tubal {

MatrixXd gaussian_projection(const MatrixXd& M, std::size_t s, Rng& rng) {
  if (s == 0) throw InvalidArgument("sketch size must be positive");
  MatrixXd G(M.cols(), static_cast<Eigen::Index>(s));
  for (Eigen::Index j = 0; j < G.cols(); ++j)
    for (Eigen::Index i = 0; i < G.rows(); ++i) G(i, j) = rng.normal();
  return M * G / std::sqrt(static_cast<double>(s));
}

MatrixXd srht(const MatrixXd& M, std::size_t s, Rng& rng) {
  const auto n = static_cast<std::size_t>(M.cols());
  if (s == 0) throw InvalidArgument("sketch size must be positive");
  if (s > n) throw InvalidArgument("srht: sketch size exceeds the number of columns");
  const std::size_t padded = std::bit_ceil(n);

  // Rows of buf are the columns of M * D, zero-padded to the Hadamard order.
  MatrixXd buf = MatrixXd::Zero(static_cast<Eigen::Index>(padded), M.rows());
  for (std::size_t j = 0; j < n; ++j) {
    const double d = rng.sign();
    buf.row(static_cast<Eigen::Index>(j)) = d * M.col(static_cast<Eigen::Index>(j)).transpose();
  }
  kernels::fwht_columns(buf);

  std::vector<std::size_t> idx(padded);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t t = 0; t < s; ++t) {
    const std::size_t pick = t + static_cast<std::size_t>(rng.below(padded - t));
    std::swap(idx[t], idx[pick]);
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(s));
  MatrixXd out(M.rows(), static_cast<Eigen::Index>(s));
  for (std::size_t t = 0; t < s; ++t)
    out.col(static_cast<Eigen::Index>(t)) = scale * buf.row(static_cast<Eigen::Index>(idx[t])).transpose();
  return out;
}

MatrixXd count_sketch(const MatrixXd& M, std::size_t s, Rng& rng) {
  if (s == 0) throw InvalidArgument("sketch size must be positive");
  MatrixXd C = MatrixXd::Zero(M.rows(), static_cast<Eigen::Index>(s));
  for (Eigen::Index i = 0; i < M.cols(); ++i) {
    const auto l = static_cast<Eigen::Index>(rng.below(s));
    const double g = rng.sign();
    C.col(l) += g * M.col(i);
  }
  return C;
}

Tensor3 gaussian_random_tensor(std::size_t rows, std::size_t cols, std::size_t p, Rng& rng) {
  Tensor3 t(rows, cols, p);
  auto first = t.slice(0);
  for (Eigen::Index j = 0; j < first.cols(); ++j)
    for (Eigen::Index i = 0; i < first.rows(); ++i) first(i, j) = rng.normal();
  return t;
}

std::string_view to_string(OperatorKind kind) noexcept {
  switch (kind) {
    case OperatorKind::gaussian: return "gaussian";
    case OperatorKind::srht: return "srht";
    case OperatorKind::count: return "count";
  }
  return "?";
}

std::string_view to_string(OperatorMode mode) noexcept {
  return mode == OperatorMode::pure ? "pure" : "data-aware";
}

OperatorKind parse_operator_kind(std::string_view name) {
  if (name == "gaussian") return OperatorKind::gaussian;
  if (name == "srht") return OperatorKind::srht;
  if (name == "count") return OperatorKind::count;
  throw InvalidArgument("unknown operator kind '" + std::string(name) + "'");
}

OperatorMode parse_operator_mode(std::string_view name) {
  if (name == "pure") return OperatorMode::pure;
  if (name == "data-aware") return OperatorMode::data_aware;
  throw InvalidArgument("unknown operator mode '" + std::string(name) + "'");
}

namespace {

MatrixXd draw(OperatorKind kind, const MatrixXd& M, std::size_t width, Rng& rng) {
  switch (kind) {
    case OperatorKind::gaussian: return gaussian_projection(M, width, rng);
    case OperatorKind::srht: return srht(M, width, rng);
    case OperatorKind::count: return count_sketch(M, width, rng);
  }
  throw InvalidArgument("unknown operator kind");
}

}  // namespace

OperatorSet make_operator_set(OperatorKind kind, OperatorMode mode, std::size_t m, std::size_t n,
                              std::size_t p, std::size_t k, std::size_t s, const Rng& rng,
                              const Tensor3* data) {
  if (k == 0) throw InvalidArgument("k must be positive");
  if (k > std::min(m, n)) throw InvalidArgument("k exceeds min(m, n)");
  if (k > s) throw InvalidArgument("k exceeds s");
  if (mode == OperatorMode::data_aware) {
    if (data == nullptr) throw InvalidArgument("data-aware operators need the input tensor");
    if (data->rows() != m || data->cols() != n || data->tubes() != p)
      throw DimensionError("data tensor shape does not match the operator set");
  }

  OperatorSet ops{Tensor3(k, m, p), Tensor3(k, n, p), Tensor3(s, m, p), Tensor3(s, n, p),
                  kind, mode, rng.seed()};
  Tensor3* targets[4] = {&ops.upsilon, &ops.omega, &ops.phi, &ops.psi};
  const std::size_t widths[4] = {k, k, s, s};

  MatrixXd base_m, base_n;
  if (mode == OperatorMode::pure) {
    base_m = MatrixXd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    base_n = MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  } else {
    base_m = data->slice(0);
    base_n = data->slice(0).transpose();
  }

  const std::size_t slices = kind == OperatorKind::count ? p : 1;
  for (std::size_t i = 0; i < slices; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      Rng sub = rng.substream(j + 4 * i);
      const MatrixXd& base = (j == 0 || j == 2) ? base_m : base_n;
      targets[j]->slice(i) = draw(kind, base, widths[j], sub).transpose();
    }
  }
  return ops;
}

SketchesBar compute_sketches_bar(const Transform& L, const CTensor3& a_bar, const OperatorSet& ops) {
  const std::size_t m = a_bar.rows(), n = a_bar.cols(), p = a_bar.tubes();
  if (ops.upsilon.cols() != m || ops.phi.cols() != m || ops.omega.cols() != n ||
      ops.psi.cols() != n || ops.upsilon.tubes() != p || ops.omega.tubes() != p ||
      ops.phi.tubes() != p || ops.psi.tubes() != p) {
    throw DimensionError("operator set does not match the input tensor");
  }
  const CTensor3 ups = transform_forward(L, ops.upsilon);
  const CTensor3 om = transform_forward(L, ops.omega);
  const CTensor3 ph = transform_forward(L, ops.phi);
  const CTensor3 ps = transform_forward(L, ops.psi);
  SketchesBar out{CTensor3(ops.k(), n, p), CTensor3(m, ops.k(), p), CTensor3(ops.s(), ops.s(), p)};
  parallel_for(p, [&](std::size_t i) {
    const auto a = a_bar.slice(i);
    out.x.slice(i).noalias() = ups.slice(i) * a;
    out.y.slice(i).noalias() = a * om.slice(i).adjoint();
    const MatrixXcd phi_a = ph.slice(i) * a;
    out.z.slice(i).noalias() = phi_a * ps.slice(i).adjoint();
  });
  return out;
}

Sketches compute_sketches(const Transform& L, const Tensor3& a, const OperatorSet& ops) {
  const SketchesBar bar = compute_sketches_bar(L, transform_forward(L, a), ops);
  return Sketches{real_part(transform_inverse(L, bar.x)), real_part(transform_inverse(L, bar.y)),
                  real_part(transform_inverse(L, bar.z))};
}

}  // namespace tubal
