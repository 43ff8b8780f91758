#pragma once

#include <cstdint>
#include <vector>

#include "tubal/lowrank.hpp"

namespace tubal {

/// ||A - A_hat||_F^2 / ||A||_F^2 (squared). Throws InvalidArgument when A = 0.
double rel_error(const Tensor3& a, const Tensor3& a_hat);

/// 10 log10(m n p ||A||_inf^2 / ||A - A_hat||_F^2); +infinity when A_hat = A.
double psnr(const Tensor3& a, const Tensor3& a_hat);

struct BoundReport {
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t q = 0;
  /// per_rho[r - 1] is the bound evaluated at rho = r, r = 1 .. k - 2.
  std::vector<double> per_rho;
  std::size_t best_rho = 0;
  double bound = 0.0;
  double empirical_mean = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
  bool satisfied = false;
};

/// min over rho of (1 + k/(s-k-1)) (1 + 2 rho/(k-rho-1)) tau^2_{rho+1}(A *_L A^H).
BoundReport bound_thm47(const Transform& L, const Tensor3& a, std::size_t k, std::size_t s);
/// Same prefactor with the tail energy of (A *_L A^H)^(2q+1).
BoundReport bound_thm_pi(const Transform& L, const Tensor3& a, std::size_t k, std::size_t s,
                         std::size_t q);

/// tau^2_j of (A *_L A^H)^power from the transformed singular values of A:
/// (1/rho) sum over slices of sum_{i >= j} s_i^(4 power).
double gram_power_tail(const Transform& L, const Tensor3& a, std::size_t j, std::size_t power);

/// Runs `spec` for `trials` independent seeds (derived from spec.seed) and
/// compares the mean squared error with the matching bound. The check passes
/// when mean <= bound + 3 SE + 1e-10 ||A||^2.
BoundReport mc_check_bound(const Transform& L, const Tensor3& a, const MethodSpec& spec,
                           std::size_t trials);

struct RatioReport {
  double empirical = 0.0;
  double standard_error = 0.0;
  double analytic = 0.0;
  std::size_t trials = 0;
};

/// Mean of ||G1^+ *_L G2 *_L B||^2 / ||B||^2 with Gaussian random tensors
/// G1 (t x q x p) and G2 (t x l x p); analytic value q / (t - q - 1).
/// B must be l x n x p. For B = 0 both sides are reported as 0.
RatioReport mc_prop_b1(std::size_t t, std::size_t q, std::size_t l, const Tensor3& b,
                       std::size_t trials, const Transform& L, std::uint64_t seed);

struct CoreSplitReport {
  std::size_t trials = 0;
  /// Largest relative residual of the error split identity over all trials.
  double max_identity_residual = 0.0;
  double mean_core_error = 0.0;
  double mean_predicted = 0.0;
  /// Standard error of the per-trial difference core_error - predicted.
  double diff_standard_error = 0.0;
  bool identity_holds = false;  // every trial within 1e-8
  bool formula_within_ci = false;
};

/// Splits the error of Gaussian l_trp_sketch into projection and core parts per
/// trial, and compares the core part with its conditional mean formula.
CoreSplitReport mc_core_split(const Transform& L, const Tensor3& a, const MethodSpec& spec,
                              std::size_t trials);

struct ProjectionReport {
  std::size_t trials = 0;
  double mean_range_error = 0.0;  // ||A - Q Q^H A||^2
  double se_range_error = 0.0;
  double mean_corange_error = 0.0;  // ||A - A P P^H||^2
  double se_corange_error = 0.0;
  double mean_two_sided_error = 0.0;  // ||A - Q Q^H A P P^H||^2
  double se_two_sided_error = 0.0;
  double one_sided_bound = 0.0;  // min over rho of (1 + f(rho,k)) tau^2
  double two_sided_bound = 0.0;  // min over rho of (1 + 2 f(rho,k)) tau^2
};

/// Projection errors of the range and co-range bases of Gaussian l_trp_sketch.
ProjectionReport mc_projection_errors(const Transform& L, const Tensor3& a, std::size_t k,
                                      std::size_t s, std::size_t trials, std::uint64_t seed);

struct SpectrumColumn {
  std::size_t q = 0;
  /// sigma_i of (A *_L A^H)^q *_L A divided by its largest value.
  std::vector<double> sigma_normalized;
};

std::vector<SpectrumColumn> spectrum(const Transform& L, const Tensor3& a,
                                     const std::vector<std::size_t>& q_list);

}  // namespace tubal
