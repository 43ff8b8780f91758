#include "tubal/rng.hpp"

namespace tubal {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t id) noexcept {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (id + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_key(std::string_view method, std::uint64_t k, std::uint64_t trial) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](unsigned char byte) {
    h ^= byte;
    h *= 0x100000001B3ULL;
  };
  for (char c : method) mix(static_cast<unsigned char>(c));
  for (std::uint64_t v : {k, trial})
    for (int b = 0; b < 8; ++b) mix(static_cast<unsigned char>((v >> (8 * b)) & 0xFF));
  return h;
}

}  // namespace tubal
