#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "tubal/rng.hpp"
#include "tubal/tensor.hpp"

namespace tubal {

/// f-diagonal n x n x p_tubes tensor whose slice j (1-based) has diagonal
/// 1 (min(r, j) times), then 2^-e, 3^-e, ..., (n - min(r, j) + 1)^-e.
struct PolyDecaySpec {
  std::size_t n = 0;
  std::size_t p_tubes = 1;
  std::size_t r = 10;
  double exponent = 2.0;
};

Tensor3 poly_decay(const PolyDecaySpec& spec);

/// A + sigma * E with E i.i.d. standard normal, drawn in storage order.
Tensor3 add_noise(const Tensor3& a, double sigma, Rng& rng);

/// Binary P6, maxval 255. Rows map to m, columns to n, channel c to slice c.
Tensor3 read_ppm(const std::filesystem::path& path);
/// Values are clamped to [0, 255] and rounded half up. Requires p = 3.
void write_ppm(const std::filesystem::path& path, const Tensor3& a);

/// Binary P5, maxval 255, as an m x n x 1 tensor.
Tensor3 read_pgm(const std::filesystem::path& path);
/// Frame t becomes slice t; all frames must share one size.
Tensor3 read_pgm_stack(const std::vector<std::filesystem::path>& paths);
/// Writes slice `k` of `a` as a P5 frame.
void write_pgm(const std::filesystem::path& path, const Tensor3& a, std::size_t k = 0);

/// TNS3: "TNS3", version 1, scalar flag 0, m, n, p as u64 LE, then m*n*p float64 LE.
inline constexpr std::size_t kTnsHeaderSize = 30;
Tensor3 read_tns(const std::filesystem::path& path);
void write_tns(const std::filesystem::path& path, const Tensor3& a);

}  // namespace tubal
