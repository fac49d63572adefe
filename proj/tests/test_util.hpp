#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nnhash/hash_mode.hpp"

namespace testutil {

inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

inline nnhash::ChainKey random_key(std::mt19937_64& rng) {
  std::array<std::uint32_t, 4> w{};
  for (auto& x : w) x = static_cast<std::uint32_t>(rng());
  return nnhash::ChainKey::from_words(w);
}

inline nnhash::Block random_block(std::mt19937_64& rng) {
  nnhash::Block b;
  for (auto& w : b.words) w = static_cast<std::uint32_t>(rng());
  return b;
}

inline nnhash::Message random_message(std::mt19937_64& rng, std::size_t bits) {
  nnhash::Message m(bits);
  for (std::size_t i = 0; i < bits; ++i) m.set_bit(i, rng() & 1u);
  return m;
}

inline const char* kCnnText =
    "Cellular neural networks (CNN) chaotic secure communication is a new secure "
    "communication scheme based on chaotic synchronization.";

}  // namespace testutil
