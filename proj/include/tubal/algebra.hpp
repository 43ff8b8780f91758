#pragma once

#include <cstddef>
#include <vector>

#include "tubal/transform.hpp"

namespace tubal {

// Slicewise helpers on tensors that already live in the transformed domain.
CTensor3 slice_product(const CTensor3& a_bar, const CTensor3& b_bar);
CTensor3 slice_adjoint(const CTensor3& a_bar);

/// Z = X *_L Y: slicewise products in the transformed domain, mapped back by L^{-1}.
CTensor3 lprod(const Transform& L, const CTensor3& x, const CTensor3& y);
/// Real operands: the result is checked to be real and returned as such.
Tensor3 lprod(const Transform& L, const Tensor3& x, const Tensor3& y);

/// Conjugate transpose with respect to L.
CTensor3 conj_transpose(const Transform& L, const CTensor3& a);
Tensor3 conj_transpose(const Transform& L, const Tensor3& a);

/// Tensor whose transformed slices are all I_n.
Tensor3 identity_tensor(const Transform& L, std::size_t n);

struct TSVDFactors {
  Transform transform;
  CTensor3 u;  // m x r x p, spatial
  CTensor3 s;  // r x r x p, spatial, f-diagonal
  CTensor3 v;  // n x r x p, spatial
  /// Column i holds the transformed singular values of slice i (r x p, nonincreasing per column).
  MatrixXd s_bar;
};

/// Transformed tensor SVD with r = min(m, n).
TSVDFactors tsvd(const Transform& L, const Tensor3& a);

/// Transformed singular values of every slice of `a_bar` (min(m,n) x p).
MatrixXd slice_singular_values(const CTensor3& a_bar);

/// sigma_i = sqrt(sum_k |S(i,i,k)|^2) from the spatial S of the t-SVD.
std::vector<double> singular_values(const Transform& L, const Tensor3& a);
std::vector<double> singular_values(const TSVDFactors& f);

/// Number of sigma_i > tol * sigma_1.
std::size_t tubal_rank(const Transform& L, const Tensor3& a, double tol = 1e-10);

/// tau_j^2 = sum_{i >= j} sigma_i^2, 1-based j in [1, min(m,n) + 1].
double tail_energy(const Transform& L, const Tensor3& a, std::size_t j);

}  // namespace tubal
