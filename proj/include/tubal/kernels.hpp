#pragma once

#include <cstddef>
#include <span>

#include "tubal/tensor.hpp"

namespace tubal::kernels {

/// out_i = sum_k M(i, k) * in_k over whole frontal slices, where in_k is the
/// k-th block of `mn` contiguous entries. Parallel over element chunks; each
/// output element is summed in increasing k, so the result does not depend on
/// the team size.
void apply_mode3(const MatrixXcd& M, std::span<const cplx> in, std::span<cplx> out,
                 std::size_t mn);
void apply_mode3(const MatrixXcd& M, std::span<const double> in, std::span<cplx> out,
                 std::size_t mn);

/// In-place unnormalized Walsh-Hadamard transform; size must be a power of two.
void fwht(std::span<double> v);

/// fwht applied to every column of `b`. Parallel over columns.
void fwht_columns(MatrixXd& b);

}  // namespace tubal::kernels
