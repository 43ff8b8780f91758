#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tubal/sketch.hpp"
#include "tubal/transform.hpp"

namespace tubal {

struct Provenance {
  std::string method;
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t q = 0;
  std::uint64_t seed = 0;
};

/// A_hat = Q *_L C *_L P^H kept in factored, transformed form.
struct FactoredApprox {
  Transform transform;
  CTensor3 q_bar;  // m x k x p
  CTensor3 c_bar;  // k x k x p
  CTensor3 p_bar;  // n x k x p
  Provenance provenance;
  /// Slices where phi*Q or psi*P lost rank and the SVD pseudo-inverse was used.
  std::size_t rank_deficient_slices = 0;
};

/// Inverse transform of Q C P^H; the imaginary residue must stay below 1e-10 relative.
Tensor3 reconstruct(const FactoredApprox& f);

/// Two-sided sketching: range/co-range sketches, QR, then the core least-squares lift.
FactoredApprox l_trp_sketch(const Transform& L, const Tensor3& a, std::size_t k, std::size_t s,
                            const OperatorSet& ops);

/// q rounds of alternating subspace iteration on transformed slices.
std::pair<CTensor3, CTensor3> power_iterate(const CTensor3& a_bar, const CTensor3& q_bar,
                                            const CTensor3& p_bar, std::size_t q);

/// l_trp_sketch with power_iterate between the QR step and the core solve.
FactoredApprox sketch_pi(const Transform& L, const Tensor3& a, std::size_t k, std::size_t s,
                         std::size_t q, const OperatorSet& ops);

/// Optimal rank-k approximation by per-slice SVD truncation.
FactoredApprox truncated_tsvd(const Transform& L, const Tensor3& a, std::size_t k);

/// One-sided randomized range finder with q subspace iterations, then a rank-k SVD.
FactoredApprox rt_svd(const Transform& L, const Tensor3& a, std::size_t k, std::size_t s,
                      std::size_t q, const Rng& rng);
FactoredApprox rt_svd(const Tensor3& a, std::size_t k, std::size_t s, std::size_t q, const Rng& rng);

/// Two-sided range/co-range estimator Q (upsilon Q)^+ X with k-row Gaussian maps.
FactoredApprox t_sketch(const Transform& L, const Tensor3& a, std::size_t k, std::size_t s,
                        const Rng& rng, std::size_t q = 0);
FactoredApprox t_sketch(const Tensor3& a, std::size_t k, std::size_t s, const Rng& rng,
                        std::size_t q = 0);

enum class Method {
  dct_gaussian_sketch,
  dct_gaussian_sketch_pi,
  l_trp_sketch,
  l_trp_sketch_pi,
  t_sketch,
  t_sketch_pi,
  rt_svd,
  truncated_tsvd,
};

std::string_view to_string(Method m) noexcept;
Method parse_method(std::string_view name);
const std::vector<Method>& all_methods();
bool uses_power_iteration(Method m) noexcept;

struct MethodSpec {
  Method method = Method::dct_gaussian_sketch;
  /// Unset: DCT for the sketching methods, DFT for the baselines.
  std::optional<TransformKind> transform;
  OperatorKind op_kind = OperatorKind::gaussian;
  OperatorMode op_mode = OperatorMode::pure;
  std::size_t k = 1;
  std::size_t s = 3;
  /// Used by the *-pi methods only.
  std::size_t q = 1;
  std::uint64_t seed = 0;
};

/// Transform kind that run_method will use for `spec`.
TransformKind effective_transform(const MethodSpec& spec) noexcept;
/// q that run_method will use for `spec` (0 for methods without power iteration).
std::size_t effective_q(const MethodSpec& spec) noexcept;

FactoredApprox run_method(const MethodSpec& spec, const Tensor3& a);
/// Same, with a prebuilt transform (must match effective_transform when that matters to the caller).
FactoredApprox run_method(const MethodSpec& spec, const Tensor3& a, const Transform& L);

}  // namespace tubal
