#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tubal/errors.hpp"

namespace tubal {

using cplx = std::complex<double>;
using MatrixXd = Eigen::MatrixXd;
using MatrixXcd = Eigen::MatrixXcd;

enum class ScalarKind : std::uint8_t { real = 0, complex = 1 };

template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr ScalarKind kind = ScalarKind::real;
};

template <>
struct scalar_traits<cplx> {
  static constexpr ScalarKind kind = ScalarKind::complex;
};

struct Dims {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t p = 0;

  std::size_t size() const noexcept { return m * n * p; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Dense third-order tensor with m x n frontal slices and tubes of length p.
///
/// Storage is slice-major and column-major within a slice: element (i, j, k)
/// lives at offset k*m*n + j*m + i. Every frontal slice is therefore a
/// contiguous column-major m x n matrix and can be viewed as an Eigen map.
template <typename T>
class BasicTensor3 {
 public:
  using value_type = T;
  using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
  using SliceMap = Eigen::Map<Matrix>;
  using ConstSliceMap = Eigen::Map<const Matrix>;

  static constexpr ScalarKind kind = scalar_traits<T>::kind;

  BasicTensor3() = default;

  BasicTensor3(std::size_t m, std::size_t n, std::size_t p) : m_(m), n_(n), p_(p) {
    if (m == 0 || n == 0 || p == 0) {
      throw InvalidArgument("tensor dimensions must be positive");
    }
    data_.assign(m * n * p, T{});
  }

  explicit BasicTensor3(Dims d) : BasicTensor3(d.m, d.n, d.p) {}

  std::size_t rows() const noexcept { return m_; }
  std::size_t cols() const noexcept { return n_; }
  std::size_t tubes() const noexcept { return p_; }
  Dims dims() const noexcept { return {m_, n_, p_}; }
  std::size_t size() const noexcept { return data_.size(); }
  std::size_t slice_size() const noexcept { return m_ * n_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept {
    return data_[k * m_ * n_ + j * m_ + i];
  }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return data_[k * m_ * n_ + j * m_ + i];
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  SliceMap slice(std::size_t k) noexcept {
    return SliceMap(data_.data() + k * m_ * n_, static_cast<Eigen::Index>(m_),
                    static_cast<Eigen::Index>(n_));
  }
  ConstSliceMap slice(std::size_t k) const noexcept {
    return ConstSliceMap(data_.data() + k * m_ * n_, static_cast<Eigen::Index>(m_),
                         static_cast<Eigen::Index>(n_));
  }

  BasicTensor3& operator+=(const BasicTensor3& o) {
    check_same(o);
    for (std::size_t t = 0; t < data_.size(); ++t) data_[t] += o.data_[t];
    return *this;
  }
  BasicTensor3& operator-=(const BasicTensor3& o) {
    check_same(o);
    for (std::size_t t = 0; t < data_.size(); ++t) data_[t] -= o.data_[t];
    return *this;
  }
  BasicTensor3& operator*=(T c) noexcept {
    for (auto& v : data_) v *= c;
    return *this;
  }

  friend BasicTensor3 operator+(BasicTensor3 a, const BasicTensor3& b) { return a += b; }
  friend BasicTensor3 operator-(BasicTensor3 a, const BasicTensor3& b) { return a -= b; }
  friend BasicTensor3 operator*(T c, BasicTensor3 a) { return a *= c; }

  friend bool operator==(const BasicTensor3&, const BasicTensor3&) = default;

 private:
  void check_same(const BasicTensor3& o) const {
    if (dims() != o.dims()) throw DimensionError("elementwise operation on tensors of different shape");
  }

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::size_t p_ = 0;
  std::vector<T> data_;
};

using Tensor3 = BasicTensor3<double>;
using CTensor3 = BasicTensor3<cplx>;

/// sqrt of the sum of squared magnitudes, accumulated in storage order.
template <typename T>
double frob_norm(const BasicTensor3<T>& a) noexcept {
  double acc = 0.0;
  for (const T& v : a.data()) acc += std::norm(v);
  return std::sqrt(acc);
}

template <typename T>
double max_abs(const BasicTensor3<T>& a) noexcept {
  double best = 0.0;
  for (const T& v : a.data()) best = std::max(best, std::abs(v));
  return best;
}

CTensor3 to_complex(const Tensor3& a);

/// Real part of `a`. Throws NumericalError when the imaginary residue exceeds
/// `rel_tol` times the Frobenius norm of `a` (plus an absolute floor of the same size).
Tensor3 real_part(const CTensor3& a, double rel_tol = 1e-10);

}  // namespace tubal
