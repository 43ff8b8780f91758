#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "tubal/algebra.hpp"
#include "tubal/sketch.hpp"

using namespace tubal;
using namespace tubal::test;

TEST_CASE("rng substreams are reproducible and distinct") {
  const Rng a(42), b(42);
  Rng s1 = a.substream(3), s2 = b.substream(3), s3 = a.substream(4);
  const double x = s1.normal();
  CHECK(x == s2.normal());
  CHECK(x != s3.normal());
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));
  CHECK(hash_key("t-sketch", 10, 0) != hash_key("t-sketch", 10, 1));
  CHECK(hash_key("t-sketch", 10, 0) == hash_key("t-sketch", 10, 0));
}

TEST_CASE("sketch shapes and zero input") {
  Rng rng(1);
  const MatrixXd z = MatrixXd::Zero(3, 4);
  CHECK(gaussian_projection(z, 2, rng).isZero(0));
  CHECK(gaussian_projection(z, 2, rng).rows() == 3);
  CHECK(gaussian_projection(z, 2, rng).cols() == 2);
  CHECK(srht(z, 2, rng).isZero(0));
  CHECK(count_sketch(z, 2, rng).isZero(0));
  CHECK(srht(MatrixXd::Ones(5, 7), 3, rng).cols() == 3);
  CHECK(count_sketch(MatrixXd::Ones(5, 7), 9, rng).cols() == 9);
}

TEST_CASE("sketch preconditions") {
  Rng rng(2);
  CHECK_THROWS_AS(srht(MatrixXd::Ones(2, 3), 4, rng), InvalidArgument);
  CHECK_THROWS_AS(gaussian_projection(MatrixXd::Ones(2, 3), 0, rng), InvalidArgument);
  CHECK_THROWS_AS(count_sketch(MatrixXd::Ones(2, 3), 0, rng), InvalidArgument);
}

TEST_CASE("gaussian projection of I_3 has expected squared norm 3") {
  Rng rng(3);
  const MatrixXd I = MatrixXd::Identity(3, 3);
  double acc = 0.0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) acc += gaussian_projection(I, 3, rng).squaredNorm();
  CHECK(std::abs(acc / trials - 3.0) / 3.0 < 0.03);
}

TEST_CASE("srht is an isometry in expectation") {
  Rng rng(4);
  const MatrixXd I = MatrixXd::Identity(8, 8);
  MatrixXd acc = MatrixXd::Zero(8, 8);
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const MatrixXd S = srht(I, 4, rng);  // I * S = S
    acc += S * S.transpose();
  }
  acc /= trials;
  CHECK((acc - I).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("srht with non power of two width") {
  Rng rng(5);
  const MatrixXd I = MatrixXd::Identity(6, 6);
  MatrixXd acc = MatrixXd::Zero(6, 6);
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const MatrixXd S = srht(I, 3, rng);
    acc += S * S.transpose();
  }
  acc /= trials;
  CHECK((acc - I).cwiseAbs().maxCoeff() < 0.06);
}

TEST_CASE("count sketch of a single column") {
  Rng rng(6);
  MatrixXd M(4, 1);
  M << 1, 2, 3, 4;
  const MatrixXd C = count_sketch(M, 5, rng);
  int nonzero = 0;
  for (Eigen::Index j = 0; j < 5; ++j) {
    if (!C.col(j).isZero(0)) {
      ++nonzero;
      CHECK(((C.col(j) - M.col(0)).isZero(0) || (C.col(j) + M.col(0)).isZero(0)));
    }
  }
  CHECK(nonzero == 1);
}

TEST_CASE("count sketch preserves squared norm in expectation") {
  Rng rng(7);
  Rng fill(8);
  MatrixXd M(6, 10);
  for (Eigen::Index j = 0; j < 10; ++j)
    for (Eigen::Index i = 0; i < 6; ++i) M(i, j) = fill.normal();
  double acc = 0.0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) acc += count_sketch(M, 4, rng).squaredNorm();
  CHECK(std::abs(acc / trials - M.squaredNorm()) / M.squaredNorm() < 0.03);
}

TEST_CASE("each kind is unbiased on a fixed B") {
  Rng fill(9);
  MatrixXd B(5, 8);
  for (Eigen::Index j = 0; j < 8; ++j)
    for (Eigen::Index i = 0; i < 5; ++i) B(i, j) = fill.normal();
  for (OperatorKind kind : {OperatorKind::gaussian, OperatorKind::srht, OperatorKind::count}) {
    Rng rng(10);
    double acc = 0.0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
      const MatrixXd C = kind == OperatorKind::gaussian ? gaussian_projection(B, 4, rng)
                         : kind == OperatorKind::srht   ? srht(B, 4, rng)
                                                        : count_sketch(B, 4, rng);
      acc += C.squaredNorm();
    }
    CHECK(std::abs(acc / trials - B.squaredNorm()) / B.squaredNorm() < 0.03);
  }
}

TEST_CASE("pure gaussian and srht sets live in slice one") {
  for (OperatorKind kind : {OperatorKind::gaussian, OperatorKind::srht}) {
    const OperatorSet ops = make_operator_set(kind, OperatorMode::pure, 10, 9, 3, 3, 7, Rng(11));
    for (const Tensor3* t : {&ops.upsilon, &ops.omega, &ops.phi, &ops.psi}) {
      CHECK(t->slice(0).squaredNorm() > 0.0);
      CHECK(t->slice(1).squaredNorm() == 0.0);
      CHECK(t->slice(2).squaredNorm() == 0.0);
    }
    CHECK(ops.upsilon.dims() == Dims{3, 10, 3});
    CHECK(ops.omega.dims() == Dims{3, 9, 3});
    CHECK(ops.phi.dims() == Dims{7, 10, 3});
    CHECK(ops.psi.dims() == Dims{7, 9, 3});
    CHECK(ops.meets_bound_regime());
  }
}

TEST_CASE("count sets populate every slice with one signed entry per column") {
  const OperatorSet ops = make_operator_set(OperatorKind::count, OperatorMode::pure, 8, 6, 4, 2, 5, Rng(12));
  for (const Tensor3* t : {&ops.upsilon, &ops.omega, &ops.phi, &ops.psi}) {
    for (std::size_t k = 0; k < 4; ++k) {
      const auto s = t->slice(k);
      CHECK(s.squaredNorm() > 0.0);
      for (Eigen::Index j = 0; j < s.cols(); ++j) {
        int nz = 0;
        for (Eigen::Index i = 0; i < s.rows(); ++i) {
          if (s(i, j) != 0.0) {
            ++nz;
            CHECK(std::abs(s(i, j)) == 1.0);
          }
        }
        CHECK(nz == 1);
      }
    }
  }
  CHECK(ops.meets_bound_regime());
}

TEST_CASE("operator sets are deterministic") {
  const Tensor3 a = random_tensor(7, 6, 3, 13);
  for (OperatorKind kind : {OperatorKind::gaussian, OperatorKind::srht, OperatorKind::count}) {
    for (OperatorMode mode : {OperatorMode::pure, OperatorMode::data_aware}) {
      const OperatorSet x = make_operator_set(kind, mode, 7, 6, 3, 2, 5, Rng(14), &a);
      const OperatorSet y = make_operator_set(kind, mode, 7, 6, 3, 2, 5, Rng(14), &a);
      CHECK(x.upsilon == y.upsilon);
      CHECK(x.omega == y.omega);
      CHECK(x.phi == y.phi);
      CHECK(x.psi == y.psi);
    }
  }
}

TEST_CASE("data-aware operators sketch the first slice") {
  const Tensor3 a = random_tensor(7, 6, 3, 15);
  const Rng rng(16);
  const OperatorSet ops = make_operator_set(OperatorKind::gaussian, OperatorMode::data_aware, 7, 6, 3, 2, 5, rng, &a);
  Rng sub = rng.substream(0);
  const MatrixXd expect = gaussian_projection(a.slice(0), 2, sub).transpose();
  CHECK((ops.upsilon.slice(0) - expect).cwiseAbs().maxCoeff() == 0.0);
  Rng sub1 = rng.substream(1);
  const MatrixXd expect_omega = gaussian_projection(MatrixXd(a.slice(0).transpose()), 2, sub1).transpose();
  CHECK((ops.omega.slice(0) - expect_omega).cwiseAbs().maxCoeff() == 0.0);
  CHECK(ops.upsilon.slice(1).squaredNorm() == 0.0);
  CHECK_THROWS_AS(make_operator_set(OperatorKind::gaussian, OperatorMode::data_aware, 7, 6, 3, 2, 5, rng),
                  InvalidArgument);
}

TEST_CASE("operator set preconditions") {
  const Rng rng(17);
  CHECK_THROWS_AS(make_operator_set(OperatorKind::gaussian, OperatorMode::pure, 5, 5, 2, 6, 8, rng), InvalidArgument);
  CHECK_THROWS_AS(make_operator_set(OperatorKind::gaussian, OperatorMode::pure, 5, 5, 2, 3, 2, rng), InvalidArgument);
  CHECK_THROWS_AS(make_operator_set(OperatorKind::srht, OperatorMode::pure, 5, 5, 2, 2, 7, rng), InvalidArgument);
}

TEST_CASE("gaussian random tensor has zeros beyond slice one") {
  Rng rng(18);
  const Tensor3 g = gaussian_random_tensor(4, 3, 5, rng);
  CHECK(g.slice(0).squaredNorm() > 0.0);
  for (std::size_t k = 1; k < 5; ++k) CHECK(g.slice(k).squaredNorm() == 0.0);
}

TEST_CASE("compute_sketches") {
  const Tensor3 zero(10, 8, 3);
  const OperatorSet ops = make_operator_set(OperatorKind::gaussian, OperatorMode::pure, 10, 8, 3, 2, 5, Rng(19));
  const Transform C = make_dct(3);
  const Sketches z = compute_sketches(C, zero, ops);
  CHECK(frob_norm(z.x) == 0.0);
  CHECK(frob_norm(z.y) == 0.0);
  CHECK(frob_norm(z.z) == 0.0);

  const Tensor3 a = random_tensor(10, 8, 3, 20);
  const Sketches sk = compute_sketches(C, a, ops);
  CHECK(sk.x.dims() == Dims{2, 8, 3});
  CHECK(sk.y.dims() == Dims{10, 2, 3});
  CHECK(sk.z.dims() == Dims{5, 5, 3});
  CHECK(rel_diff(sk.x, lprod(C, ops.upsilon, a)) < 1e-12);
  CHECK(rel_diff(sk.y, lprod(C, a, conj_transpose(C, ops.omega))) < 1e-12);
  CHECK(rel_diff(sk.z, lprod(C, lprod(C, ops.phi, a), conj_transpose(C, ops.psi))) < 1e-12);

  const Tensor3 b = random_tensor(10, 8, 3, 21);
  const Sketches sb = compute_sketches(C, b, ops);
  const Sketches sab = compute_sketches(C, a + b, ops);
  CHECK(rel_diff(sab.z, sk.z + sb.z) < 1e-12);
  CHECK(rel_diff(sab.x, sk.x + sb.x) < 1e-12);
  CHECK(rel_diff(sab.y, sk.y + sb.y) < 1e-12);
}

TEST_CASE("compute_sketches with p = 1 are matrix products") {
  const Tensor3 a = random_tensor(6, 5, 1, 22);
  const OperatorSet ops = make_operator_set(OperatorKind::gaussian, OperatorMode::pure, 6, 5, 1, 2, 4, Rng(23));
  const Sketches sk = compute_sketches(make_identity(1), a, ops);
  const MatrixXd x = ops.upsilon.slice(0) * a.slice(0);
  const MatrixXd y = a.slice(0) * ops.omega.slice(0).transpose();
  const MatrixXd z = ops.phi.slice(0) * a.slice(0) * ops.psi.slice(0).transpose();
  CHECK((sk.x.slice(0) - x).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((sk.y.slice(0) - y).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((sk.z.slice(0) - z).cwiseAbs().maxCoeff() < 1e-12);
}
