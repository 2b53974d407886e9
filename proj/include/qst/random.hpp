#pragma once

#include <cstdint>
#include <random>

namespace qst {

// SplitMix64 finalizer. Pure 64-bit integer arithmetic, bit-identical on
// every platform.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Decorrelated seed for ensemble substream `index`, so samples can be
// generated in any order (or in parallel) without changing the sequences.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
}

// Uniform double in [0, 1) from the top 53 bits of the engine output.
// std::uniform_real_distribution is implementation-defined; this is not.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace qst
