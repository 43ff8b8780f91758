#include <doctest.h>

#include <algorithm>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "tubal/algebra.hpp"
#include "tubal/lowrank.hpp"
#include "tubal/reference.hpp"

using namespace tubal;
using namespace tubal::test;

TEST_CASE("tensor layout is slice-major, column-major within a slice") {
  Tensor3 a(2, 3, 4);
  a(1, 2, 3) = 7.0;
  CHECK(a.data()[3 * 6 + 2 * 2 + 1] == 7.0);
  CHECK(a.slice(3)(1, 2) == 7.0);
  CHECK(a.size() == 24);
  CHECK_THROWS_AS(Tensor3(0, 1, 1), InvalidArgument);
}

TEST_CASE("elementwise arithmetic checks shapes") {
  Tensor3 a = random_tensor(2, 2, 2, 1);
  const Tensor3 b = random_tensor(2, 2, 2, 2);
  const Tensor3 c = a + b - b;
  CHECK(max_diff(c, a) < 1e-15);
  CHECK_THROWS_AS(a += Tensor3(2, 2, 3), DimensionError);
  CHECK(max_diff(2.0 * a, a + a) == 0.0);
}

TEST_CASE("frob_norm") {
  CHECK(frob_norm(Tensor3(3, 3, 3)) == 0.0);
  Tensor3 ones(2, 2, 2);
  for (double& v : ones.data()) v = 1.0;
  CHECK(std::abs(frob_norm(ones) - std::sqrt(8.0)) < 1e-15);
  const Tensor3 r = random_tensor(5, 4, 3, 3);
  CHECK(std::abs(frob_norm(r) - brute_frob(r)) / brute_frob(r) < 1e-14);
}

TEST_CASE("real_part rejects imaginary residue") {
  CTensor3 c(1, 1, 1);
  c(0, 0, 0) = cplx(1.0, 1e-3);
  CHECK_THROWS_AS(real_part(c), NumericalError);
  c(0, 0, 0) = cplx(1.0, 1e-14);
  CHECK(real_part(c)(0, 0, 0) == 1.0);
}

TEST_CASE("lprod degenerates to matrix product") {
  const Tensor3 x = random_tensor(3, 4, 1, 5);
  const Tensor3 y = random_tensor(4, 2, 1, 6);
  const Tensor3 z = lprod(make_identity(1), x, y);
  const MatrixXd expect = x.slice(0) * y.slice(0);
  CHECK((z.slice(0) - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("identity tensor is neutral") {
  const Tensor3 a = random_tensor(4, 5, 3, 7);
  for (const Transform& L : {make_dft(3), make_dct(3)}) {
    CHECK(rel_diff(lprod(L, a, identity_tensor(L, 5)), a) < 1e-12);
    CHECK(rel_diff(lprod(L, identity_tensor(L, 4), a), a) < 1e-12);
  }
}

TEST_CASE("dft identity tensor has I in slice one only") {
  const Tensor3 e = identity_tensor(make_dft(4), 3);
  for (std::size_t k = 0; k < 4; ++k) {
    const MatrixXd expect = k == 0 ? MatrixXd(MatrixXd::Identity(3, 3)) : MatrixXd(MatrixXd::Zero(3, 3));
    CHECK((e.slice(k) - expect).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("lprod under dft equals the block-circulant product") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Tensor3 a = random_tensor(4, 3, 5, 10 + seed);
    const Tensor3 b = random_tensor(3, 2, 5, 50 + seed);
    CHECK(rel_diff(lprod(make_dft(5), a, b), reference::tprod_circ(a, b)) < 1e-10);
  }
  const Tensor3 a = random_tensor(3, 3, 4, 91);
  const Tensor3 b = random_tensor(3, 3, 4, 92);
  CHECK(rel_diff(reference::tprod_circ(a, b), lprod(make_dft(4), a, b)) < 1e-10);
}

TEST_CASE("tprod_circ degenerate cases") {
  const Tensor3 a = random_tensor(3, 2, 1, 1);
  const Tensor3 b = random_tensor(2, 4, 1, 2);
  const MatrixXd expect = a.slice(0) * b.slice(0);
  CHECK((reference::tprod_circ(a, b).slice(0) - expect).cwiseAbs().maxCoeff() < 1e-14);
  const Tensor3 c = random_tensor(3, 3, 4, 3);
  CHECK(rel_diff(reference::tprod_circ(identity_tensor(make_dft(4), 3), c), c) < 1e-14);
  CHECK_THROWS_AS(reference::tprod_circ(a, a), DimensionError);
}

TEST_CASE("lprod agrees with the serial reference for every transform") {
  const CTensor3 x = random_ctensor(4, 3, 6, 1);
  const CTensor3 y = random_ctensor(3, 5, 6, 2);
  const Tensor3 data = random_tensor(3, 3, 6, 3);
  for (const Transform& L : {make_dft(6), make_dct(6), make_identity(6), make_u_transform(data)}) {
    CHECK(rel_diff(lprod(L, x, y), reference::lprod(L, x, y)) < 1e-12);
  }
}

TEST_CASE("lprod associativity") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Tensor3 a = random_tensor(3, 3, 4, seed), b = random_tensor(3, 3, 4, seed + 100),
                  c = random_tensor(3, 3, 4, seed + 200);
    for (const Transform& L : {make_dft(4), make_dct(4)}) {
      CHECK(rel_diff(lprod(L, lprod(L, a, b), c), lprod(L, a, lprod(L, b, c))) < 1e-10);
    }
  }
}

TEST_CASE("lprod dimension errors") {
  const Tensor3 a = random_tensor(3, 2, 4, 1);
  CHECK_THROWS_AS(lprod(make_dft(4), a, a), DimensionError);
  CHECK_THROWS_AS(lprod(make_dft(3), a, random_tensor(2, 2, 4, 2)), DimensionError);
}

TEST_CASE("conj_transpose") {
  const Tensor3 a = random_tensor(3, 5, 1, 4);
  const MatrixXd t = a.slice(0).transpose();
  CHECK((conj_transpose(make_identity(1), a).slice(0) - t).cwiseAbs().maxCoeff() < 1e-15);
  const Tensor3 b = random_tensor(4, 3, 5, 5);
  for (const Transform& L : {make_dft(5), make_dct(5)}) {
    CHECK(rel_diff(conj_transpose(L, conj_transpose(L, b)), b) < 1e-12);
    const CTensor3 gram_bar = transform_forward(L, lprod(L, conj_transpose(L, b), b));
    for (std::size_t i = 0; i < 5; ++i) {
      const MatrixXcd g = gram_bar.slice(i);
      CHECK((g - g.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + g.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("tsvd factors reconstruct and are unitary") {
  const Tensor3 a = random_tensor(6, 4, 3, 8);
  for (const Transform& L : {make_dft(3), make_dct(3), make_u_transform(a)}) {
    const TSVDFactors f = tsvd(L, a);
    const CTensor3 rec = lprod(L, lprod(L, f.u, f.s), conj_transpose(L, f.v));
    CHECK(rel_diff(rec, a) < 1e-10);
    const CTensor3 uu = lprod(L, conj_transpose(L, f.u), f.u);
    const CTensor3 vv = lprod(L, conj_transpose(L, f.v), f.v);
    CHECK(max_diff(uu, to_complex(identity_tensor(L, 4))) < 1e-10);
    CHECK(max_diff(vv, to_complex(identity_tensor(L, 4))) < 1e-10);
    for (std::size_t k = 0; k < 3; ++k)
      for (Eigen::Index i = 1; i < f.s_bar.rows(); ++i) CHECK(f.s_bar(i, k) <= f.s_bar(i - 1, k));
  }
}

TEST_CASE("tsvd of an f-diagonal tensor under dct") {
  Tensor3 a(4, 4, 3);
  const double d[3][4] = {{5, 3, 2, 1}, {4, 4, 1, 0.5}, {3, 2, 2, 0.1}};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 4; ++i) a(i, i, k) = d[k][i];
  const Transform L = make_dct(3);
  const CTensor3 a_bar = transform_forward(L, a);
  const TSVDFactors f = tsvd(L, a);
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<double> diag;
    for (std::size_t i = 0; i < 4; ++i) diag.push_back(std::abs(a_bar(i, i, k)));
    std::sort(diag.rbegin(), diag.rend());
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(std::abs(f.s_bar(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) - diag[i]) < 1e-12);
  }
}

TEST_CASE("zero tensor has zero spectrum and rank") {
  const Tensor3 z(4, 3, 2);
  const TSVDFactors f = tsvd(make_dct(2), z);
  CHECK(frob_norm(f.s) == 0.0);
  for (double s : singular_values(make_dft(2), z)) CHECK(s == 0.0);
  CHECK(tubal_rank(make_dct(2), z) == 0);
}

TEST_CASE("singular values with p = 1 are matrix singular values") {
  const Tensor3 a = random_tensor(5, 3, 1, 31);
  const std::vector<double> s = singular_values(make_identity(1), a);
  Eigen::JacobiSVD<MatrixXd> svd(MatrixXd(a.slice(0)));
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(std::abs(s[i] - svd.singularValues()(static_cast<Eigen::Index>(i))) < 1e-12);
}

TEST_CASE("singular values follow the spatial-S definition") {
  Tensor3 a(20, 20, 4);
  for (std::size_t j = 1; j <= 4; ++j) {
    const std::size_t ones = std::min<std::size_t>(2, j);
    for (std::size_t i = 0; i < 20; ++i)
      a(i, i, j - 1) = i < ones ? 1.0 : std::pow(static_cast<double>(i - ones + 2), -2.0);
  }
  for (const Transform& L : {make_dft(4), make_dct(4)}) {
    const std::vector<double> sigma = singular_values(L, a);
    // Brute force: full per-slice SVD via JacobiSVD, back-transform the diagonal tubes.
    const CTensor3 a_bar = transform_forward(L, a);
    CTensor3 s_bar(20, 20, 4);
    for (std::size_t k = 0; k < 4; ++k) {
      Eigen::JacobiSVD<MatrixXcd> svd(MatrixXcd(a_bar.slice(k)));
      for (std::size_t i = 0; i < 20; ++i) s_bar(i, i, k) = svd.singularValues()(static_cast<Eigen::Index>(i));
    }
    const CTensor3 s = transform_inverse(L, s_bar);
    for (std::size_t i = 0; i < 20; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 4; ++k) acc += std::norm(s(i, i, k));
      CHECK(std::abs(sigma[i] - std::sqrt(acc)) < 1e-12);
    }
    for (std::size_t i = 1; i < 20; ++i) CHECK(sigma[i] <= sigma[i - 1] * (1 + 1e-12));
  }
}

TEST_CASE("tubal rank") {
  CHECK(tubal_rank(make_dct(3), identity_tensor(make_dct(3), 5)) == 5);
  for (const Transform& L : {make_dft(4), make_dct(4)}) {
    const Tensor3 a = random_low_rank(L, 9, 7, 4, 4, 12);
    CHECK(tubal_rank(L, a, 1e-10) == 4);
  }
  CHECK_THROWS_AS(tubal_rank(make_dct(2), Tensor3(2, 2, 2), -1.0), InvalidArgument);
}

TEST_CASE("tail energy endpoints") {
  const Tensor3 a = random_tensor(6, 4, 3, 44);
  for (const Transform& L : {make_dft(3), make_dct(3)}) {
    const double n2 = frob_norm(a) * frob_norm(a);
    CHECK(std::abs(tail_energy(L, a, 1) - n2) / n2 < 1e-12);
    CHECK(tail_energy(L, a, 5) == 0.0);
    CHECK_THROWS_AS(tail_energy(L, a, 0), InvalidArgument);
    CHECK_THROWS_AS(tail_energy(L, a, 6), InvalidArgument);
  }
}

TEST_CASE("tail energy equals scaled slice tails") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Tensor3 a = random_tensor(8, 6, 3, 300 + seed);
    for (const Transform& L : {make_dft(3), make_dct(3), make_u_transform(a)}) {
      const CTensor3 a_bar = transform_forward(L, a);
      for (std::size_t j = 1; j <= 7; ++j) {
        double slices = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
          Eigen::JacobiSVD<MatrixXcd> svd(MatrixXcd(a_bar.slice(k)));
          for (std::size_t i = j - 1; i < 6; ++i)
            slices += std::pow(svd.singularValues()(static_cast<Eigen::Index>(i)), 2);
        }
        slices /= L.rho();
        const double tau = tail_energy(L, a, j);
        CHECK(std::abs(tau - slices) <= 1e-10 * std::max(slices, 1e-300) + 1e-300);
      }
    }
  }
}

TEST_CASE("tail energy is the optimal truncation error") {
  const Tensor3 a = random_tensor(8, 6, 3, 55);
  for (const Transform& L : {make_dft(3), make_dct(3)}) {
    for (std::size_t j = 2; j <= 6; ++j) {
      const Tensor3 approx = reconstruct(truncated_tsvd(L, a, j - 1));
      const double err = std::pow(frob_norm(a - approx), 2);
      const double tau = tail_energy(L, a, j);
      CHECK(std::abs(err - tau) / tau < 1e-9);
    }
  }
}
