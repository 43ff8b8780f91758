#include "tubal/kernels.hpp"

#include <algorithm>
#include <bit>
#include <type_traits>
#include <vector>

#include "tubal/parallel.hpp"

namespace tubal::kernels {
namespace {

constexpr std::size_t kChunk = 2048;

bool is_real(const MatrixXcd& M) {
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    for (Eigen::Index i = 0; i < M.rows(); ++i)
      if (M(i, j).imag() != 0.0) return false;
  return true;
}

void check_sizes(const MatrixXcd& M, std::size_t in_size, std::size_t out_size, std::size_t mn) {
  const auto rows = static_cast<std::size_t>(M.rows());
  const auto cols = static_cast<std::size_t>(M.cols());
  if (in_size != cols * mn || out_size != rows * mn) {
    throw DimensionError("mode-3 product: tube length does not match transform size");
  }
}

template <typename In>
void apply_impl(const MatrixXcd& M, std::span<const In> in, std::span<cplx> out, std::size_t mn) {
  check_sizes(M, in.size(), out.size(), mn);
  const auto rows = static_cast<std::size_t>(M.rows());
  const auto cols = static_cast<std::size_t>(M.cols());
  const std::size_t chunks = (mn + kChunk - 1) / kChunk;

  if constexpr (std::is_same_v<In, double>) {
    if (is_real(M)) {
      const MatrixXd R = M.real();
      parallel_for(chunks, [&](std::size_t c) {
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(mn, lo + kChunk);
        std::vector<double> acc(hi - lo);
        for (std::size_t i = 0; i < rows; ++i) {
          std::fill(acc.begin(), acc.end(), 0.0);
          for (std::size_t k = 0; k < cols; ++k) {
            const double w = R(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
            if (w == 0.0) continue;
            const double* src = in.data() + k * mn;
            for (std::size_t t = lo; t < hi; ++t) acc[t - lo] += w * src[t];
          }
          cplx* dst = out.data() + i * mn;
          for (std::size_t t = lo; t < hi; ++t) dst[t] = cplx(acc[t - lo], 0.0);
        }
      });
      return;
    }
  }

  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t lo = c * kChunk;
    const std::size_t hi = std::min(mn, lo + kChunk);
    for (std::size_t i = 0; i < rows; ++i) {
      cplx* dst = out.data() + i * mn;
      for (std::size_t t = lo; t < hi; ++t) dst[t] = cplx(0.0, 0.0);
      for (std::size_t k = 0; k < cols; ++k) {
        const cplx w = M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        if (w == cplx(0.0, 0.0)) continue;
        const In* src = in.data() + k * mn;
        for (std::size_t t = lo; t < hi; ++t) dst[t] += w * src[t];
      }
    }
  });
}

}  // namespace

void apply_mode3(const MatrixXcd& M, std::span<const cplx> in, std::span<cplx> out,
                 std::size_t mn) {
  apply_impl<cplx>(M, in, out, mn);
}

void apply_mode3(const MatrixXcd& M, std::span<const double> in, std::span<cplx> out,
                 std::size_t mn) {
  apply_impl<double>(M, in, out, mn);
}

void fwht(std::span<double> v) {
  const std::size_t n = v.size();
  if (!std::has_single_bit(n)) throw InvalidArgument("fwht length must be a power of two");
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

void fwht_columns(MatrixXd& b) {
  const auto rows = static_cast<std::size_t>(b.rows());
  parallel_for(static_cast<std::size_t>(b.cols()), [&](std::size_t j) {
    fwht(std::span<double>(b.col(static_cast<Eigen::Index>(j)).data(), rows));
  });
}

}  // namespace tubal::kernels
