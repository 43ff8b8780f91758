#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "tubal/algebra.hpp"
#include "tubal/rng.hpp"
#include "tubal/tensor.hpp"

namespace tubal::test {

inline Tensor3 random_tensor(std::size_t m, std::size_t n, std::size_t p, std::uint64_t seed) {
  Rng rng(seed);
  Tensor3 a(m, n, p);
  for (double& v : a.data()) v = rng.normal();
  return a;
}

inline CTensor3 random_ctensor(std::size_t m, std::size_t n, std::size_t p, std::uint64_t seed) {
  Rng rng(seed);
  CTensor3 a(m, n, p);
  for (cplx& v : a.data()) v = cplx(rng.normal(), rng.normal());
  return a;
}

/// G1 *_L G2 with Gaussian G1 (m x r x p) and G2 (r x n x p): tubal rank r under L.
inline Tensor3 random_low_rank(const Transform& L, std::size_t m, std::size_t n, std::size_t p,
                               std::size_t r, std::uint64_t seed) {
  return lprod(L, random_tensor(m, r, p, seed), random_tensor(r, n, p, seed + 1));
}

/// Procedural 128 x 128 colour picture: smooth background, a few discs and
/// stripes, mild texture. Values in [0, 255].
inline Tensor3 synthetic_image(std::size_t size = 128, std::uint64_t seed = 5) {
  Tensor3 img(size, size, 3);
  Rng rng(seed);
  const double n = static_cast<double>(size);
  struct Disc {
    double cx, cy, r, col[3];
  };
  const Disc discs[] = {{0.30, 0.35, 0.18, {220, 60, 40}},
                        {0.70, 0.60, 0.22, {40, 120, 210}},
                        {0.55, 0.25, 0.10, {240, 220, 60}}};
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const double y = static_cast<double>(i) / n, x = static_cast<double>(j) / n;
      double px[3] = {90 + 80 * x, 110 + 60 * y, 150 - 70 * x * y};
      for (const Disc& d : discs) {
        if ((x - d.cx) * (x - d.cx) + (y - d.cy) * (y - d.cy) < d.r * d.r)
          for (int c = 0; c < 3; ++c) px[c] = d.col[c];
      }
      const double stripe = 25.0 * std::sin(2.0 * 3.14159265358979 * 6.0 * (x + 0.5 * y));
      for (std::size_t c = 0; c < 3; ++c) {
        const double v = px[c] + (y > 0.75 ? stripe : 0.0) + 4.0 * rng.normal();
        img(i, j, c) = std::clamp(v, 0.0, 255.0);
      }
    }
  }
  return img;
}

}  // namespace tubal::test
