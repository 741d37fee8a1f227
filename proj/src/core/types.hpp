#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>

namespace simex {

// State ids are plain integers. Real states are non-negative cell indices,
// but learned action effects may be re-applied anywhere, so imagined states
// can fall outside the grid or below zero.
using StateId = std::int64_t;
using ActionId = std::int32_t;

struct StateAction {
  StateId s = 0;
  ActionId a = 0;

  friend auto operator<=>(const StateAction&, const StateAction&) = default;
};

struct StateActionHash {
  std::size_t operator()(const StateAction& sa) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(sa.s) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(sa.a)) + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace simex
