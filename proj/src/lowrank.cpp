#include "tubal/lowrank.hpp"

#include <algorithm>
#include <atomic>

#include "tubal/algebra.hpp"
#include "tubal/linalg.hpp"
#include "tubal/parallel.hpp"

namespace tubal {
namespace {

using linalg::orthonormal_basis;

void check_rank_params(const Tensor3& a, std::size_t k, std::size_t s) {
  if (k == 0) throw InvalidArgument("k must be positive");
  if (k > std::min(a.rows(), a.cols())) throw InvalidArgument("k exceeds min(m, n)");
  if (k > s) throw InvalidArgument("k exceeds s");
}

void check_transform(const Transform& L, const Tensor3& a) {
  if (L.size() != a.tubes()) throw DimensionError("tube length does not match transform size");
}

// C = (G)^+ Z ((H)^+)^H computed as two least-squares solves.
MatrixXcd core_solve(const MatrixXcd& g, const MatrixXcd& h, const MatrixXcd& z, bool& deficient) {
  bool d1 = false, d2 = false;
  const MatrixXcd w = linalg::pinv_solve(g, z, &d1);
  MatrixXcd c = linalg::pinv_solve(h, w.adjoint(), &d2).adjoint();
  deficient = d1 || d2;
  return c;
}

void iterate_slice(const MatrixXcd& a, MatrixXcd& q, MatrixXcd& p, std::size_t rounds) {
  for (std::size_t j = 0; j < rounds; ++j) {
    const MatrixXcd q_tilde = orthonormal_basis(a.adjoint() * q);
    const MatrixXcd q_hat = orthonormal_basis(a * q_tilde);
    const MatrixXcd p_tilde = orthonormal_basis(a * p);
    const MatrixXcd p_hat = orthonormal_basis(a.adjoint() * p_tilde);
    q = q_hat;
    p = p_hat;
  }
}

FactoredApprox two_sided(const Transform& L, const Tensor3& a, std::size_t k, std::size_t s,
                         std::size_t q, const OperatorSet& ops, const char* name) {
  check_transform(L, a);
  check_rank_params(a, k, s);
  if (ops.k() != k || ops.s() != s) throw DimensionError("operator set does not match k and s");
  const std::size_t m = a.rows(), n = a.cols(), p = a.tubes();

  const CTensor3 a_bar = transform_forward(L, a);
  const SketchesBar sk = compute_sketches_bar(L, a_bar, ops);
  const CTensor3 phi_bar = transform_forward(L, ops.phi);
  const CTensor3 psi_bar = transform_forward(L, ops.psi);

  FactoredApprox f{L, CTensor3(m, k, p), CTensor3(k, k, p), CTensor3(n, k, p),
                   Provenance{name, k, s, q, ops.seed}, 0};
  std::atomic<std::size_t> deficient{0};
  parallel_for(p, [&](std::size_t i) {
    const MatrixXcd a_i = a_bar.slice(i);
    MatrixXcd p_i = orthonormal_basis(sk.x.slice(i).adjoint());
    MatrixXcd q_i = orthonormal_basis(sk.y.slice(i));
    iterate_slice(a_i, q_i, p_i, q);
    bool def = false;
    f.c_bar.slice(i) = core_solve(phi_bar.slice(i) * q_i, psi_bar.slice(i) * p_i, sk.z.slice(i), def);
    f.q_bar.slice(i) = q_i;
    f.p_bar.slice(i) = p_i;
    if (def) deficient.fetch_add(1, std::memory_order_relaxed);
  });
  f.rank_deficient_slices = deficient.load();
  return f;
}

}  // namespace

Tensor3 reconstruct(const FactoredApprox& f) {
  const std::size_t p = f.q_bar.tubes();
  CTensor3 bar(f.q_bar.rows(), f.p_bar.rows(), p);
  parallel_for(p, [&](std::size_t i) {
    const MatrixXcd qc = f.q_bar.slice(i) * f.c_bar.slice(i);
    bar.slice(i).noalias() = qc * f.p_bar.slice(i).adjoint();
  });
  return real_part(transform_inverse(f.transform, bar), 1e-10);
}

FactoredApprox l_trp_sketch(const Transform& L, const Tensor3& a, std::size_t k, std::size_t s,
                            const OperatorSet& ops) {
  return two_sided(L, a, k, s, 0, ops, "l-trp-sketch");
}

std::pair<CTensor3, CTensor3> power_iterate(const CTensor3& a_bar, const CTensor3& q_bar,
                                            const CTensor3& p_bar, std::size_t q) {
  if (q_bar.rows() != a_bar.rows() || p_bar.rows() != a_bar.cols() ||
      q_bar.tubes() != a_bar.tubes() || p_bar.tubes() != a_bar.tubes()) {
    throw DimensionError("power_iterate: factor shapes do not match");
  }
  CTensor3 q_out = q_bar;
  CTensor3 p_out = p_bar;
  if (q == 0) return {std::move(q_out), std::move(p_out)};
  parallel_for(a_bar.tubes(), [&](std::size_t i) {
    MatrixXcd qi = q_bar.slice(i);
    MatrixXcd pi = p_bar.slice(i);
    iterate_slice(a_bar.slice(i), qi, pi, q);
    if (qi.cols() != q_out.slice(i).cols() || pi.cols() != p_out.slice(i).cols())
      throw DimensionError("power_iterate: factor wider than the slice rank allows");
    q_out.slice(i) = qi;
    p_out.slice(i) = pi;
  });
  return {std::move(q_out), std::move(p_out)};
}

FactoredApprox sketch_pi(const Transform& L, const Tensor3& a, std::size_t k, std::size_t s,
                         std::size_t q, const OperatorSet& ops) {
  return two_sided(L, a, k, s, q, ops, "l-trp-sketch-pi");
}

FactoredApprox truncated_tsvd(const Transform& L, const Tensor3& a, std::size_t k) {
  check_transform(L, a);
  check_rank_params(a, k, k);
  const std::size_t m = a.rows(), n = a.cols(), p = a.tubes();
  const CTensor3 a_bar = transform_forward(L, a);
  FactoredApprox f{L, CTensor3(m, k, p), CTensor3(k, k, p), CTensor3(n, k, p),
                   Provenance{"truncated-t-svd", k, k, 0, 0}, 0};
  const auto kk = static_cast<Eigen::Index>(k);
  parallel_for(p, [&](std::size_t i) {
    const linalg::ThinSvd svd = linalg::thin_svd(a_bar.slice(i));
    f.q_bar.slice(i) = svd.u.leftCols(kk);
    f.p_bar.slice(i) = svd.v.leftCols(kk);
    f.c_bar.slice(i) = svd.s.head(kk).cast<cplx>().asDiagonal();
  });
  return f;
}

FactoredApprox rt_svd(const Transform& L, const Tensor3& a, std::size_t k, std::size_t s,
                      std::size_t q, const Rng& rng) {
  check_transform(L, a);
  check_rank_params(a, k, s);
  const std::size_t m = a.rows(), n = a.cols(), p = a.tubes();
  Rng sub = rng.substream(1);
  const CTensor3 omega_bar = transform_forward(L, gaussian_random_tensor(s, n, p, sub));
  const CTensor3 a_bar = transform_forward(L, a);
  FactoredApprox f{L, CTensor3(m, k, p), CTensor3(k, k, p), CTensor3(n, k, p),
                   Provenance{"rt-svd", k, s, q, rng.seed()}, 0};
  const auto kk = static_cast<Eigen::Index>(k);
  parallel_for(p, [&](std::size_t i) {
    const MatrixXcd a_i = a_bar.slice(i);
    MatrixXcd qi = orthonormal_basis(a_i * omega_bar.slice(i).adjoint());
    for (std::size_t j = 0; j < q; ++j) qi = orthonormal_basis(a_i * orthonormal_basis(a_i.adjoint() * qi));
    const MatrixXcd b = qi.adjoint() * a_i;
    const linalg::ThinSvd svd = linalg::thin_svd(b);
    f.q_bar.slice(i) = qi * svd.u.leftCols(kk);
    f.p_bar.slice(i) = svd.v.leftCols(kk);
    f.c_bar.slice(i) = svd.s.head(kk).cast<cplx>().asDiagonal();
  });
  return f;
}

FactoredApprox rt_svd(const Tensor3& a, std::size_t k, std::size_t s, std::size_t q, const Rng& rng) {
  return rt_svd(make_dft(a.tubes()), a, k, s, q, rng);
}

FactoredApprox t_sketch(const Transform& L, const Tensor3& a, std::size_t k, std::size_t s,
                        const Rng& rng, std::size_t q) {
  check_transform(L, a);
  check_rank_params(a, k, s);
  const std::size_t m = a.rows(), n = a.cols(), p = a.tubes();
  Rng sub_u = rng.substream(0);
  Rng sub_o = rng.substream(1);
  const CTensor3 ups_bar = transform_forward(L, gaussian_random_tensor(k, m, p, sub_u));
  const CTensor3 omega_bar = transform_forward(L, gaussian_random_tensor(k, n, p, sub_o));
  const CTensor3 a_bar = transform_forward(L, a);
  FactoredApprox f{L, CTensor3(m, k, p), CTensor3(k, k, p), CTensor3(n, k, p),
                   Provenance{q > 0 ? "t-sketch-pi" : "t-sketch", k, s, q, rng.seed()}, 0};
  std::atomic<std::size_t> deficient{0};
  parallel_for(p, [&](std::size_t i) {
    const MatrixXcd a_i = a_bar.slice(i);
    const MatrixXcd x = ups_bar.slice(i) * a_i;
    MatrixXcd qi = orthonormal_basis(a_i * omega_bar.slice(i).adjoint());
    for (std::size_t j = 0; j < q; ++j) qi = orthonormal_basis(a_i * orthonormal_basis(a_i.adjoint() * qi));
    const MatrixXcd pi = orthonormal_basis(x.adjoint());
    bool def = false;
    f.c_bar.slice(i) = linalg::pinv_solve(ups_bar.slice(i) * qi, x * pi, &def);
    f.q_bar.slice(i) = qi;
    f.p_bar.slice(i) = pi;
    if (def) deficient.fetch_add(1, std::memory_order_relaxed);
  });
  f.rank_deficient_slices = deficient.load();
  return f;
}

FactoredApprox t_sketch(const Tensor3& a, std::size_t k, std::size_t s, const Rng& rng, std::size_t q) {
  return t_sketch(make_dft(a.tubes()), a, k, s, rng, q);
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::dct_gaussian_sketch: return "dct-gaussian-sketch";
    case Method::dct_gaussian_sketch_pi: return "dct-gaussian-sketch-pi";
    case Method::l_trp_sketch: return "l-trp-sketch";
    case Method::l_trp_sketch_pi: return "l-trp-sketch-pi";
    case Method::t_sketch: return "t-sketch";
    case Method::t_sketch_pi: return "t-sketch-pi";
    case Method::rt_svd: return "rt-svd";
    case Method::truncated_tsvd: return "truncated-t-svd";
  }
  return "?";
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = {
      Method::dct_gaussian_sketch, Method::dct_gaussian_sketch_pi, Method::l_trp_sketch,
      Method::l_trp_sketch_pi,     Method::t_sketch,               Method::t_sketch_pi,
      Method::rt_svd,              Method::truncated_tsvd};
  return methods;
}

Method parse_method(std::string_view name) {
  for (Method m : all_methods())
    if (to_string(m) == name) return m;
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

bool uses_power_iteration(Method m) noexcept {
  return m == Method::dct_gaussian_sketch_pi || m == Method::l_trp_sketch_pi ||
         m == Method::t_sketch_pi;
}

TransformKind effective_transform(const MethodSpec& spec) noexcept {
  switch (spec.method) {
    case Method::dct_gaussian_sketch:
    case Method::dct_gaussian_sketch_pi: return TransformKind::dct;
    case Method::l_trp_sketch:
    case Method::l_trp_sketch_pi: return spec.transform.value_or(TransformKind::dct);
    default: return spec.transform.value_or(TransformKind::dft);
  }
}

std::size_t effective_q(const MethodSpec& spec) noexcept {
  return uses_power_iteration(spec.method) ? spec.q : 0;
}

FactoredApprox run_method(const MethodSpec& spec, const Tensor3& a) {
  return run_method(spec, a, make_transform(effective_transform(spec), a));
}

FactoredApprox run_method(const MethodSpec& spec, const Tensor3& a, const Transform& L) {
  const Rng rng(spec.seed);
  const std::size_t q = effective_q(spec);
  const std::string name(to_string(spec.method));
  FactoredApprox f = [&] {
    switch (spec.method) {
      case Method::dct_gaussian_sketch:
      case Method::dct_gaussian_sketch_pi:
      case Method::l_trp_sketch:
      case Method::l_trp_sketch_pi: {
        const bool dct = spec.method == Method::dct_gaussian_sketch ||
                         spec.method == Method::dct_gaussian_sketch_pi;
        check_rank_params(a, spec.k, spec.s);
        const OperatorSet ops =
            make_operator_set(dct ? OperatorKind::gaussian : spec.op_kind, spec.op_mode, a.rows(),
                              a.cols(), a.tubes(), spec.k, spec.s, rng, &a);
        return sketch_pi(L, a, spec.k, spec.s, q, ops);
      }
      case Method::t_sketch:
      case Method::t_sketch_pi: return t_sketch(L, a, spec.k, spec.s, rng, q);
      case Method::rt_svd: return rt_svd(L, a, spec.k, spec.s, q, rng);
      case Method::truncated_tsvd: return truncated_tsvd(L, a, spec.k);
    }
    throw InvalidArgument("unknown method");
  }();
  f.provenance.method = name;
  f.provenance.seed = spec.seed;
  f.provenance.s = spec.s;
  return f;
}

}  // namespace tubal
