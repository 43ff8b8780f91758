// Serial reference kernels against the OpenMP kernels. Prints CSV:
// kernel,variant,threads,size,ms,max_diff
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>

#include "tubal/algebra.hpp"
#include "tubal/kernels.hpp"
#include "tubal/lowrank.hpp"
#include "tubal/parallel.hpp"
#include "tubal/reference.hpp"
#include "tubal/sketch.hpp"

using namespace tubal;

namespace {

Tensor3 random_tensor(std::size_t m, std::size_t n, std::size_t p, std::uint64_t seed) {
  Rng rng(seed);
  Tensor3 a(m, n, p);
  for (double& v : a.data()) v = rng.normal();
  return a;
}

// Best of `reps` wall times in milliseconds.
double time_ms(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* kernel, const char* variant, int threads, const std::string& size, double ms, double diff) {
  std::printf("%s,%s,%d,%s,%.3f,%.3g\n", kernel, variant, threads, size.c_str(), ms, diff);
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const std::size_t n = quick ? 48 : 256;
  const std::size_t p = quick ? 4 : 8;
  const int reps = quick ? 1 : 3;
  const int team = std::max(2, num_threads());
  const std::string size = std::to_string(n) + "x" + std::to_string(n) + "x" + std::to_string(p);

  std::printf("kernel,variant,threads,size,ms,max_diff\n");
  const Tensor3 a = random_tensor(n, n, p, 1);
  const Transform C = make_dct(p);
  const CTensor3 ac = to_complex(a);

  // Mode-3 transform.
  CTensor3 ref_bar, par_bar;
  row("transform", "reference", 1, size, time_ms(reps, [&] { ref_bar = reference::transform_forward(C, ac); }), 0.0);
  for (int t : {1, team}) {
    ThreadScope scope(t);
    const double ms = time_ms(reps, [&] { par_bar = transform_forward(C, a); });
    row("transform", "openmp", t, size, ms, max_abs(CTensor3(par_bar - ref_bar)));
  }

  // Transform-domain product.
  const std::size_t np = quick ? n : 96;
  const CTensor3 a2 = to_complex(random_tensor(np, np, p, 3)), b2 = to_complex(random_tensor(np, np, p, 4));
  const std::string size2 = std::to_string(np) + "x" + std::to_string(np) + "x" + std::to_string(p);
  CTensor3 ref_prod, par_prod;
  row("lprod", "reference", 1, size2, time_ms(reps, [&] { ref_prod = reference::lprod(C, a2, b2); }), 0.0);
  for (int t : {1, team}) {
    ThreadScope scope(t);
    const double ms = time_ms(reps, [&] { par_prod = lprod(C, a2, b2); });
    row("lprod", "openmp", t, size2, ms, max_abs(CTensor3(par_prod - ref_prod)));
  }

  // Walsh-Hadamard over columns.
  const auto h = static_cast<Eigen::Index>(quick ? 256 : 4096);
  const auto cols = static_cast<Eigen::Index>(quick ? 16 : 256);
  MatrixXd m0(h, cols);
  Rng rng(5);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < h; ++i) m0(i, j) = rng.normal();
  const std::string hsize = std::to_string(h) + "x" + std::to_string(cols);
  MatrixXd ref_h;
  row("fwht", "reference", 1, hsize, time_ms(reps, [&] {
        ref_h = m0;
        for (Eigen::Index j = 0; j < cols; ++j)
          reference::hadamard_apply(std::span<double>(ref_h.col(j).data(), static_cast<std::size_t>(h)));
      }), 0.0);
  for (int t : {1, team}) {
    ThreadScope scope(t);
    MatrixXd par_h;
    const double ms = time_ms(reps, [&] {
      par_h = m0;
      kernels::fwht_columns(par_h);
    });
    row("fwht", "openmp", t, hsize, ms, (par_h - ref_h).cwiseAbs().maxCoeff());
  }

  // End-to-end two-sided sketch.
  const std::size_t k = quick ? 5 : 20;
  const OperatorSet ops = make_operator_set(OperatorKind::gaussian, OperatorMode::pure, n, n, p, k, 2 * k + 1, Rng(6));
  Tensor3 first;
  for (int t : {1, team}) {
    ThreadScope scope(t);
    Tensor3 out;
    const double ms = time_ms(reps, [&] { out = reconstruct(l_trp_sketch(C, a, k, 2 * k + 1, ops)); });
    if (first.size() == 0) first = out;
    row("l_trp_sketch", "openmp", t, size, ms, max_abs(Tensor3(out - first)));
  }
  return 0;
}
