#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tubal {

/// splitmix64 finalizer applied to (master, id): the seed of substream `id`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t id) noexcept;

/// FNV-1a over the method name followed by k and trial (little-endian bytes).
std::uint64_t hash_key(std::string_view method, std::uint64_t k, std::uint64_t trial) noexcept;

/// Seeded generator. Substreams are derived from the master seed alone, so a
/// draw sequence depends only on (seed, substream id) and never on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  Rng substream(std::uint64_t id) const { return Rng(derive_seed(seed_, id)); }

  double normal() { return normal_(engine_); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }
  /// +1 or -1 with equal probability.
  double sign() { return below(2) == 0 ? 1.0 : -1.0; }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace tubal
