#include "tubal/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tubal/algebra.hpp"
#include "tubal/linalg.hpp"
#include "tubal/parallel.hpp"

namespace tubal {
namespace {

void check_same_dims(const Tensor3& a, const Tensor3& b) {
  if (a.dims() != b.dims()) throw DimensionError("tensors have different shapes");
}

double squared_diff(const Tensor3& a, const Tensor3& b) {
  check_same_dims(a, b);
  double acc = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t t = 0; t < x.size(); ++t) {
    const double d = x[t] - y[t];
    acc += d * d;
  }
  return acc;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

// Fixed-order reduction.
MeanSe mean_se(const std::vector<double>& v) {
  MeanSe out;
  if (v.empty()) return out;
  double sum = 0.0;
  for (double x : v) sum += x;
  out.mean = sum / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
  }
  return out;
}

BoundReport bound_impl(const Transform& L, const Tensor3& a, std::size_t k, std::size_t s,
                       std::size_t q) {
  if (k < 3) throw InvalidArgument("bound needs k >= 3");
  if (s < 2 * k + 1) throw InvalidArgument("bound needs s >= 2k + 1");
  if (L.size() != a.tubes()) throw DimensionError("tube length does not match transform size");
  BoundReport r;
  r.k = k;
  r.s = s;
  r.q = q;
  const double dk = static_cast<double>(k);
  const double fks = dk / (static_cast<double>(s) - dk - 1.0);
  r.bound = std::numeric_limits<double>::infinity();
  for (std::size_t rho = 1; rho + 2 <= k; ++rho) {
    const double drho = static_cast<double>(rho);
    const double frk = 2.0 * drho / (dk - drho - 1.0);
    const double value = (1.0 + fks) * (1.0 + frk) * gram_power_tail(L, a, rho + 1, 2 * q + 1);
    r.per_rho.push_back(value);
    if (value < r.bound) {
      r.bound = value;
      r.best_rho = rho;
    }
  }
  return r;
}

double slice_tail_power(const MatrixXd& sv, double rho_l, std::size_t j, double exponent) {
  double acc = 0.0;
  for (Eigen::Index c = 0; c < sv.cols(); ++c)
    for (Eigen::Index i = static_cast<Eigen::Index>(j) - 1; i < sv.rows(); ++i)
      acc += std::pow(sv(i, c), exponent);
  return acc / rho_l;
}

}  // namespace

double rel_error(const Tensor3& a, const Tensor3& a_hat) {
  const double na = frob_norm(a);
  if (na == 0.0) throw InvalidArgument("relative error of a zero reference");
  return squared_diff(a, a_hat) / (na * na);
}

double psnr(const Tensor3& a, const Tensor3& a_hat) {
  const double err = squared_diff(a, a_hat);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  const double peak = max_abs(a);
  return 10.0 * std::log10(static_cast<double>(a.size()) * peak * peak / err);
}

double gram_power_tail(const Transform& L, const Tensor3& a, std::size_t j, std::size_t power) {
  const MatrixXd sv = slice_singular_values(transform_forward(L, a));
  const auto r = static_cast<std::size_t>(sv.rows());
  if (j < 1) throw InvalidArgument("tail index must be at least 1");
  if (j > r) return 0.0;
  return slice_tail_power(sv, L.rho(), j, 4.0 * static_cast<double>(power));
}

BoundReport bound_thm47(const Transform& L, const Tensor3& a, std::size_t k, std::size_t s) {
  return bound_impl(L, a, k, s, 0);
}

BoundReport bound_thm_pi(const Transform& L, const Tensor3& a, std::size_t k, std::size_t s,
                         std::size_t q) {
  return bound_impl(L, a, k, s, q);
}

BoundReport mc_check_bound(const Transform& L, const Tensor3& a, const MethodSpec& spec,
                           std::size_t trials) {
  if (trials < 20) throw InvalidArgument("bound checks need at least 20 trials");
  const std::size_t q = effective_q(spec);
  BoundReport r = bound_impl(L, a, spec.k, spec.s, q);
  std::vector<double> err(trials);
  parallel_for(trials, [&](std::size_t t) {
    MethodSpec trial = spec;
    trial.seed = derive_seed(spec.seed, t);
    err[t] = squared_diff(a, reconstruct(run_method(trial, a, L)));
  }, true);
  const MeanSe ms = mean_se(err);
  const double na = frob_norm(a);
  r.empirical_mean = ms.mean;
  r.standard_error = ms.se;
  r.trials = trials;
  r.satisfied = ms.mean <= r.bound + 3.0 * ms.se + 1e-10 * na * na;
  return r;
}

RatioReport mc_prop_b1(std::size_t t, std::size_t q, std::size_t l, const Tensor3& b,
                       std::size_t trials, const Transform& L, std::uint64_t seed) {
  if (q == 0 || t < q + 2) throw InvalidArgument("need t > q + 1 and q >= 1");
  if (b.rows() != l) throw DimensionError("B must have l rows");
  if (b.tubes() != L.size()) throw DimensionError("tube length does not match transform size");
  if (trials == 0) throw InvalidArgument("trials must be positive");
  RatioReport r;
  r.trials = trials;
  const double nb = frob_norm(b);
  if (nb == 0.0) return r;
  r.analytic = static_cast<double>(q) / (static_cast<double>(t) - static_cast<double>(q) - 1.0);
  const std::size_t p = b.tubes();
  const CTensor3 b_bar = transform_forward(L, b);
  const Rng master(seed);
  std::vector<double> ratio(trials);
  parallel_for(trials, [&](std::size_t trial) {
    const Rng rt = master.substream(trial);
    Rng r1 = rt.substream(0);
    Rng r2 = rt.substream(1);
    const CTensor3 g1 = transform_forward(L, gaussian_random_tensor(t, q, p, r1));
    const CTensor3 g2 = transform_forward(L, gaussian_random_tensor(t, l, p, r2));
    double acc = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      const MatrixXcd rhs = g2.slice(i) * b_bar.slice(i);
      acc += linalg::pinv_solve(g1.slice(i), rhs).squaredNorm();
    }
    ratio[trial] = acc / L.rho() / (nb * nb);
  }, true);
  const MeanSe ms = mean_se(ratio);
  r.empirical = ms.mean;
  r.standard_error = ms.se;
  return r;
}

namespace {

OperatorSet gaussian_pure_ops(const Tensor3& a, std::size_t k, std::size_t s, std::uint64_t seed) {
  return make_operator_set(OperatorKind::gaussian, OperatorMode::pure, a.rows(), a.cols(),
                           a.tubes(), k, s, Rng(seed));
}

}  // namespace

CoreSplitReport mc_core_split(const Transform& L, const Tensor3& a, const MethodSpec& spec,
                              std::size_t trials) {
  const bool two_sided = spec.method == Method::l_trp_sketch ||
                         spec.method == Method::dct_gaussian_sketch;
  if (!two_sided || spec.op_kind != OperatorKind::gaussian || spec.op_mode != OperatorMode::pure)
    throw InvalidArgument("core split needs the two-sided sketch with Gaussian pure operators");
  const std::size_t k = spec.k, s = spec.s;
  if (s < k + 2) throw InvalidArgument("core split needs s > k + 1");
  if (trials == 0) throw InvalidArgument("trials must be positive");

  const CTensor3 a_bar = transform_forward(L, a);
  const double na2 = frob_norm(a) * frob_norm(a);
  const double dk = static_cast<double>(k), ds = static_cast<double>(s);
  const double c1 = dk / (ds - dk - 1.0);
  const double c2 = dk * (2.0 * dk + 1.0 - ds) / ((ds - dk - 1.0) * (ds - dk - 1.0));

  std::vector<double> residual(trials), core(trials), predicted(trials), diff(trials);
  parallel_for(trials, [&](std::size_t t) {
    const OperatorSet ops = gaussian_pure_ops(a, k, s, derive_seed(spec.seed, t));
    const FactoredApprox f = l_trp_sketch(L, a, k, s, ops);
    const double total = squared_diff(a, reconstruct(f));
    double proj = 0.0, core_err = 0.0, perp = 0.0;
    for (std::size_t i = 0; i < a.tubes(); ++i) {
      const MatrixXcd ai = a_bar.slice(i);
      const MatrixXcd qi = f.q_bar.slice(i);
      const MatrixXcd pi = f.p_bar.slice(i);
      const MatrixXcd qap = qi.adjoint() * ai * pi;
      proj += (ai - qi * qap * pi.adjoint()).squaredNorm();
      core_err += (MatrixXcd(f.c_bar.slice(i)) - qap).squaredNorm();
      const MatrixXcd left = ai - qi * (qi.adjoint() * ai);
      perp += (left - (left * pi) * pi.adjoint()).squaredNorm();
    }
    proj /= L.rho();
    core_err /= L.rho();
    perp /= L.rho();
    residual[t] = std::abs(total - (proj + core_err)) / (total + 1e-12 * na2);
    core[t] = core_err;
    predicted[t] = c1 * proj + c2 * perp;
    diff[t] = core[t] - predicted[t];
  }, true);

  CoreSplitReport r;
  r.trials = trials;
  for (double v : residual) r.max_identity_residual = std::max(r.max_identity_residual, v);
  r.identity_holds = r.max_identity_residual <= 1e-8;
  r.mean_core_error = mean_se(core).mean;
  r.mean_predicted = mean_se(predicted).mean;
  const MeanSe d = mean_se(diff);
  r.diff_standard_error = d.se;
  r.formula_within_ci = std::abs(d.mean) <= 3.0 * d.se + 1e-12 * na2;
  return r;
}

ProjectionReport mc_projection_errors(const Transform& L, const Tensor3& a, std::size_t k,
                                      std::size_t s, std::size_t trials, std::uint64_t seed) {
  if (k < 3) throw InvalidArgument("projection bounds need k >= 3");
  if (trials == 0) throw InvalidArgument("trials must be positive");
  const CTensor3 a_bar = transform_forward(L, a);
  std::vector<double> range(trials), corange(trials), both(trials);
  parallel_for(trials, [&](std::size_t t) {
    const OperatorSet ops = gaussian_pure_ops(a, k, s, derive_seed(seed, t));
    const FactoredApprox f = l_trp_sketch(L, a, k, s, ops);
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    for (std::size_t i = 0; i < a.tubes(); ++i) {
      const MatrixXcd ai = a_bar.slice(i);
      const MatrixXcd qi = f.q_bar.slice(i);
      const MatrixXcd pi = f.p_bar.slice(i);
      e1 += (ai - qi * (qi.adjoint() * ai)).squaredNorm();
      e2 += (ai - (ai * pi) * pi.adjoint()).squaredNorm();
      e3 += (ai - qi * (qi.adjoint() * ai * pi) * pi.adjoint()).squaredNorm();
    }
    range[t] = e1 / L.rho();
    corange[t] = e2 / L.rho();
    both[t] = e3 / L.rho();
  }, true);

  ProjectionReport r;
  r.trials = trials;
  MeanSe ms = mean_se(range);
  r.mean_range_error = ms.mean;
  r.se_range_error = ms.se;
  ms = mean_se(corange);
  r.mean_corange_error = ms.mean;
  r.se_corange_error = ms.se;
  ms = mean_se(both);
  r.mean_two_sided_error = ms.mean;
  r.se_two_sided_error = ms.se;

  const double dk = static_cast<double>(k);
  r.one_sided_bound = std::numeric_limits<double>::infinity();
  r.two_sided_bound = std::numeric_limits<double>::infinity();
  for (std::size_t rho = 1; rho + 2 <= k; ++rho) {
    const double f = static_cast<double>(rho) / (dk - static_cast<double>(rho) - 1.0);
    const double tail = gram_power_tail(L, a, rho + 1, 1);
    r.one_sided_bound = std::min(r.one_sided_bound, (1.0 + f) * tail);
    r.two_sided_bound = std::min(r.two_sided_bound, (1.0 + 2.0 * f) * tail);
  }
  return r;
}

std::vector<SpectrumColumn> spectrum(const Transform& L, const Tensor3& a,
                                     const std::vector<std::size_t>& q_list) {
  const MatrixXd sv = slice_singular_values(transform_forward(L, a));
  std::vector<SpectrumColumn> out;
  for (std::size_t q : q_list) {
    const double e = 2.0 * (2.0 * static_cast<double>(q) + 1.0);
    SpectrumColumn col{q, std::vector<double>(static_cast<std::size_t>(sv.rows()), 0.0)};
    for (Eigen::Index i = 0; i < sv.rows(); ++i) {
      double acc = 0.0;
      for (Eigen::Index c = 0; c < sv.cols(); ++c) acc += std::pow(sv(i, c), e);
      col.sigma_normalized[static_cast<std::size_t>(i)] = std::sqrt(acc / L.rho());
    }
    const double top = col.sigma_normalized.empty() ? 0.0 : col.sigma_normalized.front();
    if (top > 0.0)
      for (double& v : col.sigma_normalized) v /= top;
    out.push_back(std::move(col));
  }
  return out;
}

}  // namespace tubal
