#pragma once

#include "tubal/transform.hpp"

// Straightforward serial implementations kept as test oracles and as the
// baseline for the kernel benchmark.
namespace tubal::reference {

/// Tube-by-tube dense matrix-vector transform.
CTensor3 transform_forward(const Transform& L, const CTensor3& a);
CTensor3 transform_inverse(const Transform& L, const CTensor3& a_bar);

/// Triple-loop slice products in the transformed domain.
CTensor3 lprod(const Transform& L, const CTensor3& x, const CTensor3& y);

/// t-product through the explicit block-circulant matrix circ(A) times vec(B).
Tensor3 tprod_circ(const Tensor3& a, const Tensor3& b);

/// Radix-2 Walsh-Hadamard transform by explicit Sylvester matrix.
void hadamard_apply(std::span<double> v);

}  // namespace tubal::reference
