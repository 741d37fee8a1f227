#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace simex {

using Rng = std::mt19937_64;

// std::uniform_int_distribution is not bit-portable across standard
// libraries; these draws are, which keeps seeded runs reproducible.
inline std::uint64_t rand_below(Rng& rng, std::uint64_t n) {
  return n <= 1 ? 0 : rng() % n;
}

inline double rand_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void shuffle(std::vector<T>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rand_below(rng, i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace simex
