#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "tubal/tensor.hpp"

namespace tubal {

enum class TransformKind { dft, dct, u, identity };

std::string_view to_string(TransformKind kind) noexcept;
/// Parses "dft", "dct", "u" or "identity"; throws InvalidArgument otherwise.
TransformKind parse_transform_kind(std::string_view name);

/// Invertible mode-3 map L together with its inverse and norm scale.
///
/// rho satisfies ||forward(A)||_F^2 = rho * ||A||_F^2: p for the unnormalized
/// DFT and 1 for the unitary kinds.
class Transform {
 public:
  Transform(TransformKind kind, MatrixXcd matrix, MatrixXcd inverse, double rho,
            bool real_valued);

  TransformKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const MatrixXcd& matrix() const noexcept { return matrix_; }
  const MatrixXcd& inverse() const noexcept { return inverse_; }
  double rho() const noexcept { return rho_; }
  /// True when real input stays real in the transformed domain.
  bool real_valued() const noexcept { return real_valued_; }

 private:
  TransformKind kind_;
  MatrixXcd matrix_;
  MatrixXcd inverse_;
  double rho_;
  bool real_valued_;
};

Transform make_dft(std::size_t p);
Transform make_dct(std::size_t p);
Transform make_identity(std::size_t p);
/// Data-driven unitary transform from the left singular vectors of the mode-3
/// unfolding of `a` (row k of the unfolding is slice k, vectorized).
Transform make_u_transform(const Tensor3& a);
/// make_dft/make_dct/make_identity by kind; kind u needs data and uses `a`.
Transform make_transform(TransformKind kind, const Tensor3& a);

CTensor3 transform_forward(const Transform& L, const Tensor3& a);
CTensor3 transform_forward(const Transform& L, const CTensor3& a);
CTensor3 transform_inverse(const Transform& L, const CTensor3& a_bar);

}  // namespace tubal
