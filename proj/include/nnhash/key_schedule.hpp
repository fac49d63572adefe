// Expansion of a 128-bit key into the 151 network sub-keys.
//
// The key is read as four big-endian 32-bit words K0..K3. (K0, K1) seed one
// chaotic orbit (start value, map parameter) and (K2, K3) a second one; the
// k-th sub-key is the modulo-1 sum of the two orbits after t + k steps.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "nnhash/chaos.hpp"

namespace nnhash {

/// 128-bit key; used both for the user key and the running per-block key.
/// Bit i counts from the most significant bit of byte 0.
class ChainKey {
 public:
  ChainKey() = default;
  explicit ChainKey(const std::array<std::uint8_t, 16>& bytes) : bytes_(bytes) {}

  /// Exactly 32 hex digits.
  static ChainKey from_hex(std::string_view hex);
  /// Exactly 16 characters, taken as raw bytes (e.g. "0123456789abcdef").
  static ChainKey from_ascii(std::string_view text);
  static ChainKey from_words(const std::array<std::uint32_t, 4>& words);

  const std::array<std::uint8_t, 16>& bytes() const { return bytes_; }
  std::uint32_t word(std::size_t i) const;
  std::array<std::uint32_t, 4> words() const;

  bool bit(std::size_t i) const { return (bytes_.at(i / 8) >> (7 - i % 8)) & 1u; }
  ChainKey with_bit_flipped(std::size_t i) const;

  std::string to_hex() const;

  friend bool operator==(const ChainKey&, const ChainKey&) = default;

 private:
  std::array<std::uint8_t, 16> bytes_{};
};

namespace layout {
inline constexpr std::size_t kW0 = 0;     // 32 input weights
inline constexpr std::size_t kB0 = 32;    // 8 input biases
inline constexpr std::size_t kQ0 = 40;
inline constexpr std::size_t kW1 = 41;    // 8x8 hidden weights, row-major
inline constexpr std::size_t kB1 = 105;   // 8 hidden biases
inline constexpr std::size_t kQ1 = 113;
inline constexpr std::size_t kW2 = 114;   // 4x8 output weights, row-major
inline constexpr std::size_t kB2 = 146;   // 4 output biases
inline constexpr std::size_t kQ2 = 150;
inline constexpr std::size_t kSubKeyCount = 151;
}  // namespace layout

template <typename Scalar>
struct BasicSubKeys {
  Eigen::Matrix<Scalar, 32, 1> w0;
  Eigen::Matrix<Scalar, 8, 1> b0;
  Scalar q0;
  Eigen::Matrix<Scalar, 8, 8, Eigen::RowMajor> w1;
  Eigen::Matrix<Scalar, 8, 1> b1;
  Scalar q1;
  Eigen::Matrix<Scalar, 4, 8, Eigen::RowMajor> w2;
  Eigen::Matrix<Scalar, 4, 1> b2;
  Scalar q2;
};

using SubKeys = BasicSubKeys<double>;

/// w / 2^32, exact in binary64.
template <typename Scalar = double>
Scalar quantize_word(std::uint32_t w) {
  return Scalar(static_cast<double>(w)) / Scalar(0x1p32);
}

/// Maps a unit value onto a valid chaos parameter: clamp(u/2, 2^-20, 0.5-2^-20).
template <typename Scalar>
Scalar derive_param(const Scalar& u) {
  const Scalar half = u / Scalar(2.0);
  if (scalar_value(half) < ChaosParam::kMin) return Scalar(ChaosParam::kMin);
  if (scalar_value(half) > ChaosParam::kMax) return Scalar(ChaosParam::kMax);
  return half;
}

/// x = 0 is a fixed point of the map; keep orbit seeds off both ends.
template <typename Scalar>
Scalar clamp_seed(const Scalar& x) {
  if (scalar_value(x) < 0x1p-32) return Scalar(0x1p-32);
  if (scalar_value(x) > 1.0 - 0x1p-32) return Scalar(1.0 - 0x1p-32);
  return x;
}

template <typename Scalar>
struct StreamSeeds {
  Scalar x0, qa;  // from K0, K1
  Scalar x1, qb;  // from K2, K3
};

template <typename Scalar = double>
StreamSeeds<Scalar> stream_seeds(const ChainKey& key) {
  return {clamp_seed(quantize_word<Scalar>(key.word(0))),
          derive_param(quantize_word<Scalar>(key.word(1))),
          clamp_seed(quantize_word<Scalar>(key.word(2))),
          derive_param(quantize_word<Scalar>(key.word(3)))};
}

namespace detail {

template <typename Scalar>
std::vector<Scalar> subkey_stream_unchecked(const ChainKey& key, std::size_t count, int t) {
  const StreamSeeds<Scalar> s = stream_seeds<Scalar>(key);
  Scalar a = map_iter(s.x0, s.qa, t);
  Scalar b = map_iter(s.x1, s.qb, t);
  std::vector<Scalar> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    if (j > 0) {
      a = map_step(a, s.qa);
      b = map_step(b, s.qb);
    }
    out.push_back(mod1(Scalar(a + b)));
  }
  return out;
}

}  // namespace detail

/// Sub-key j is mod1(f^(t+j)(x0; qa) + f^(t+j)(x1; qb)). Each orbit is run
/// once to step t and then advanced one step per emitted sub-key, which is
/// bitwise identical to iterating from scratch.
template <typename Scalar = double>
std::vector<Scalar> subkey_stream(const ChainKey& key, std::size_t count, int t) {
  if (count < 1) throw std::invalid_argument("subkey_stream: count must be >= 1");
  if (t < 1) throw std::invalid_argument("subkey_stream: iteration count must be >= 1");
  return detail::subkey_stream_unchecked<Scalar>(key, count, t);
}

/// Lays the stream out as W0, B0, Q0, W1, B1, Q1, W2, B2, Q2. The three Q
/// slots pass through derive_param. Throws std::length_error unless the
/// stream holds exactly 151 values.
template <typename Scalar>
BasicSubKeys<Scalar> assign_subkeys(std::span<const Scalar> stream) {
  if (stream.size() != layout::kSubKeyCount) {
    throw std::length_error("assign_subkeys: expected 151 sub-keys, got " +
                            std::to_string(stream.size()));
  }
  BasicSubKeys<Scalar> k;
  for (int i = 0; i < 32; ++i) k.w0(i) = stream[layout::kW0 + i];
  for (int i = 0; i < 8; ++i) k.b0(i) = stream[layout::kB0 + i];
  k.q0 = derive_param(stream[layout::kQ0]);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) k.w1(r, c) = stream[layout::kW1 + 8 * r + c];
  for (int i = 0; i < 8; ++i) k.b1(i) = stream[layout::kB1 + i];
  k.q1 = derive_param(stream[layout::kQ1]);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 8; ++c) k.w2(r, c) = stream[layout::kW2 + 8 * r + c];
  for (int i = 0; i < 4; ++i) k.b2(i) = stream[layout::kB2 + i];
  k.q2 = derive_param(stream[layout::kQ2]);
  return k;
}

/// Inverse layout of assign_subkeys; Q slots hold the derived parameters.
std::vector<double> flatten_subkeys(const SubKeys& keys);

template <typename Scalar = double>
BasicSubKeys<Scalar> expand_key(const ChainKey& key, int t) {
  const std::vector<Scalar> stream = subkey_stream<Scalar>(key, layout::kSubKeyCount, t);
  return assign_subkeys<Scalar>(stream);
}

}  // namespace nnhash
