#pragma once

#include <cstdint>
#include <random>

namespace gpcal {

using Rng = std::mt19937_64;

// splitmix64 step; used only to expand one master seed into decorrelated
// per-stream seeds (chains, data generation, prediction draws).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Generator for logical stream `stream` of a master seed. Stream 0 is the
// conventional scalar/master stream; chains use streams 1..C.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::uint64_t s = seed;
  std::uint64_t x = splitmix64(s);
  for (std::uint64_t i = 0; i < stream; ++i) x = splitmix64(s);
  return Rng(x);
}

}  // namespace gpcal
