#include "nnhash/key_schedule.hpp"

#include <algorithm>

#include "nnhash/hex.hpp"

namespace nnhash {

ChainKey ChainKey::from_hex(std::string_view hex) {
  if (hex.size() != 32) throw FormatError("key must be exactly 32 hex digits");
  const std::vector<std::uint8_t> raw = nnhash::from_hex(hex);
  std::array<std::uint8_t, 16> bytes{};
  std::copy(raw.begin(), raw.end(), bytes.begin());
  return ChainKey(bytes);
}

ChainKey ChainKey::from_ascii(std::string_view text) {
  if (text.size() != 16) throw FormatError("ASCII key must be exactly 16 bytes");
  std::array<std::uint8_t, 16> bytes{};
  std::transform(text.begin(), text.end(), bytes.begin(),
                 [](char c) { return static_cast<std::uint8_t>(c); });
  return ChainKey(bytes);
}

ChainKey ChainKey::from_words(const std::array<std::uint32_t, 4>& words) {
  std::array<std::uint8_t, 16> bytes{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t b = 0; b < 4; ++b) {
      bytes[4 * i + b] = static_cast<std::uint8_t>(words[i] >> (24 - 8 * b));
    }
  }
  return ChainKey(bytes);
}

std::uint32_t ChainKey::word(std::size_t i) const {
  const std::size_t o = 4 * i;
  return (std::uint32_t{bytes_.at(o)} << 24) | (std::uint32_t{bytes_.at(o + 1)} << 16) |
         (std::uint32_t{bytes_.at(o + 2)} << 8) | std::uint32_t{bytes_.at(o + 3)};
}

std::array<std::uint32_t, 4> ChainKey::words() const {
  return {word(0), word(1), word(2), word(3)};
}

ChainKey ChainKey::with_bit_flipped(std::size_t i) const {
  ChainKey k = *this;
  k.bytes_.at(i / 8) ^= static_cast<std::uint8_t>(0x80u >> (i % 8));
  return k;
}

std::string ChainKey::to_hex() const { return nnhash::to_hex(bytes_); }

std::vector<double> flatten_subkeys(const SubKeys& k) {
  std::vector<double> out(layout::kSubKeyCount);
  for (int i = 0; i < 32; ++i) out[layout::kW0 + i] = k.w0(i);
  for (int i = 0; i < 8; ++i) out[layout::kB0 + i] = k.b0(i);
  out[layout::kQ0] = k.q0;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) out[layout::kW1 + 8 * r + c] = k.w1(r, c);
  for (int i = 0; i < 8; ++i) out[layout::kB1 + i] = k.b1(i);
  out[layout::kQ1] = k.q1;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 8; ++c) out[layout::kW2 + 8 * r + c] = k.w2(r, c);
  for (int i = 0; i < 4; ++i) out[layout::kB2 + i] = k.b2(i);
  out[layout::kQ2] = k.q2;
  return out;
}

}  // namespace nnhash
