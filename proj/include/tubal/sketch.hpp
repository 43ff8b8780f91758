#pragma once

#include <cstdint>
#include <string_view>

#include "tubal/rng.hpp"
#include "tubal/transform.hpp"

namespace tubal {

/// M * G / sqrt(s) with G an n x s standard normal matrix.
MatrixXd gaussian_projection(const MatrixXd& M, std::size_t s, Rng& rng);

/// M * D * H * P / sqrt(s): random signs, Walsh-Hadamard mixing over the
/// zero-padded power-of-two width, then s columns sampled without replacement.
/// Requires s <= M.cols().
MatrixXd srht(const MatrixXd& M, std::size_t s, Rng& rng);

/// Streaming count sketch: every input column is added, with a random sign, to
/// one uniformly chosen output column.
MatrixXd count_sketch(const MatrixXd& M, std::size_t s, Rng& rng);

/// rows x cols x p tensor with an i.i.d. standard normal first slice and zeros elsewhere.
Tensor3 gaussian_random_tensor(std::size_t rows, std::size_t cols, std::size_t p, Rng& rng);

enum class OperatorKind { gaussian, srht, count };
enum class OperatorMode { pure, data_aware };

std::string_view to_string(OperatorKind kind) noexcept;
std::string_view to_string(OperatorMode mode) noexcept;
OperatorKind parse_operator_kind(std::string_view name);
OperatorMode parse_operator_mode(std::string_view name);

/// The four dimension reduction tensors: upsilon (k x m x p), omega (k x n x p),
/// phi (s x m x p) and psi (s x n x p).
struct OperatorSet {
  Tensor3 upsilon;
  Tensor3 omega;
  Tensor3 phi;
  Tensor3 psi;
  OperatorKind kind = OperatorKind::gaussian;
  OperatorMode mode = OperatorMode::pure;
  std::uint64_t seed = 0;

  std::size_t k() const noexcept { return upsilon.rows(); }
  std::size_t s() const noexcept { return phi.rows(); }
  /// The expectation bounds assume s >= 2k + 1.
  bool meets_bound_regime() const noexcept { return s() >= 2 * k() + 1; }
};

/// Draws an operator set. Substream of operator j (0 upsilon, 1 omega, 2 phi,
/// 3 psi) for slice i is j + 4 * i. `data` is required for the data-aware mode
/// and ignored otherwise.
OperatorSet make_operator_set(OperatorKind kind, OperatorMode mode, std::size_t m, std::size_t n,
                              std::size_t p, std::size_t k, std::size_t s, const Rng& rng,
                              const Tensor3* data = nullptr);

struct Sketches {
  Tensor3 x;  // k x n x p
  Tensor3 y;  // m x k x p
  Tensor3 z;  // s x s x p
};

struct SketchesBar {
  CTensor3 x;
  CTensor3 y;
  CTensor3 z;
};

/// Sketches of an already transformed tensor, returned in the transformed domain.
SketchesBar compute_sketches_bar(const Transform& L, const CTensor3& a_bar, const OperatorSet& ops);
Sketches compute_sketches(const Transform& L, const Tensor3& a, const OperatorSet& ops);

}  // namespace tubal
