// Variable-length hashing: '1'-then-zeros padding to whole 1024-bit blocks and
// XOR key chaining. Block i is hashed under sub-keys expanded from the running
// key K_i; K_{i+1} = K_i ^ H_i, and the final running key is the digest:
//
//   H_M = K ^ H_0 ^ H_1 ^ ... ^ H_{n-1}
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nnhash/block_hash.hpp"
#include "nnhash/key_schedule.hpp"

namespace nnhash {

/// Bit string of exact length. Bits are stored MSB-first in bytes; bits past
/// size_bits() in the final byte are always zero.
class Message {
 public:
  Message() = default;
  /// `bits` zero bits.
  explicit Message(std::size_t bits);

  static Message from_bytes(std::span<const std::uint8_t> bytes);
  static Message from_string(std::string_view text);

  std::size_t size_bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  bool bit(std::size_t i) const;
  void set_bit(std::size_t i, bool value);
  void flip_bit(std::size_t i);
  void push_bit(bool value);

  friend bool operator==(const Message&, const Message&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

struct PaddedMessage {
  std::vector<Block> blocks;
};

/// Appends one '1' bit and the fewest '0' bits reaching a multiple of 1024.
/// A message already on a block boundary gains a whole padding block.
PaddedMessage pad(const Message& m);

/// Strips trailing zeros and the final '1'. Throws FormatError when the
/// blocks contain no '1' bit.
Message unpad(const PaddedMessage& padded);

ChainKey operator^(const ChainKey& key, const Digest& digest);
Digest to_digest(const ChainKey& key);

struct ChainStep {
  Digest block_digest;
  ChainKey next_key;
};

ChainStep chain_step(const ChainKey& prev_key, const Block& block, int t,
                     Execution exec = Execution::sequential);

struct ChainTrace {
  std::vector<Digest> block_digests;
  Digest digest;
};

/// hash_message keeping every per-block digest.
ChainTrace hash_message_traced(const Message& m, const ChainKey& key, int t,
                               Execution exec = Execution::sequential);

Digest hash_message(const Message& m, const ChainKey& key, int t,
                    Execution exec = Execution::sequential);

/// 32 uppercase hex digits, H0 first.
std::string format_digest(const Digest& d);
/// Inverse of format_digest (either case). Throws FormatError.
Digest parse_digest(std::string_view hex);

/// One `key_hex,message_hex,t,digest_hex` record.
struct GoldenVector {
  ChainKey key;
  Message message;
  int t = kProductionIterations;
  Digest digest;
};

std::string format_golden_line(const GoldenVector& v);
GoldenVector parse_golden_line(std::string_view line);

void write_golden_vectors(std::ostream& out, std::span<const GoldenVector> vectors);
/// Blank lines are skipped; anything else must parse. Throws FormatError.
std::vector<GoldenVector> read_golden_vectors(std::istream& in);

/// The built-in (key, message, t) corpus hashed into the golden file.
std::vector<GoldenVector> golden_corpus();
/// golden_corpus() with digests computed by this build.
std::vector<GoldenVector> generate_golden_vectors();

}  // namespace nnhash
