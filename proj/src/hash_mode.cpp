#include "nnhash/hash_mode.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "nnhash/hex.hpp"

namespace nnhash {

Message::Message(std::size_t bits) : bytes_((bits + 7) / 8, 0), bits_(bits) {}

Message Message::from_bytes(std::span<const std::uint8_t> bytes) {
  Message m;
  m.bytes_.assign(bytes.begin(), bytes.end());
  m.bits_ = bytes.size() * 8;
  return m;
}

Message Message::from_string(std::string_view text) {
  return from_bytes({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

bool Message::bit(std::size_t i) const {
  if (i >= bits_) throw std::out_of_range("message bit index out of range");
  return (bytes_[i / 8] >> (7 - i % 8)) & 1u;
}

void Message::set_bit(std::size_t i, bool value) {
  if (i >= bits_) throw std::out_of_range("message bit index out of range");
  const auto mask = static_cast<std::uint8_t>(0x80u >> (i % 8));
  if (value) {
    bytes_[i / 8] |= mask;
  } else {
    bytes_[i / 8] &= static_cast<std::uint8_t>(~mask);
  }
}

void Message::flip_bit(std::size_t i) { set_bit(i, !bit(i)); }

void Message::push_bit(bool value) {
  if (bits_ % 8 == 0) bytes_.push_back(0);
  ++bits_;
  set_bit(bits_ - 1, value);
}

PaddedMessage pad(const Message& m) {
  const std::size_t total = (m.size_bits() / 1024 + 1) * 1024;
  std::vector<std::uint8_t> buf((total / 8), 0);
  std::copy(m.bytes().begin(), m.bytes().end(), buf.begin());
  const std::size_t one = m.size_bits();
  buf[one / 8] |= static_cast<std::uint8_t>(0x80u >> (one % 8));

  PaddedMessage out;
  out.blocks.resize(total / 1024);
  for (std::size_t b = 0; b < out.blocks.size(); ++b) {
    for (std::size_t w = 0; w < 32; ++w) {
      const std::size_t o = b * 128 + w * 4;
      out.blocks[b].words[w] = (std::uint32_t{buf[o]} << 24) | (std::uint32_t{buf[o + 1]} << 16) |
                               (std::uint32_t{buf[o + 2]} << 8) | std::uint32_t{buf[o + 3]};
    }
  }
  return out;
}

Message unpad(const PaddedMessage& padded) {
  const std::size_t total = padded.blocks.size() * 1024;
  auto bit_at = [&](std::size_t i) {
    const std::uint32_t w = padded.blocks[i / 1024].words[(i % 1024) / 32];
    return ((w >> (31 - i % 32)) & 1u) != 0;
  };
  std::size_t end = total;
  while (end > 0 && !bit_at(end - 1)) --end;
  if (end == 0) throw FormatError("padded message has no terminating '1' bit");
  const std::size_t length = end - 1;
  Message m(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (bit_at(i)) m.set_bit(i, true);
  }
  return m;
}

ChainKey operator^(const ChainKey& key, const Digest& digest) {
  std::array<std::uint32_t, 4> w = key.words();
  for (std::size_t i = 0; i < 4; ++i) w[i] ^= digest.words[i];
  return ChainKey::from_words(w);
}

Digest to_digest(const ChainKey& key) { return Digest{key.words()}; }

ChainStep chain_step(const ChainKey& prev_key, const Block& block, int t, Execution exec) {
  const Digest h = hash_block(block, expand_key(prev_key, t), t, exec);
  return {h, prev_key ^ h};
}

ChainTrace hash_message_traced(const Message& m, const ChainKey& key, int t, Execution exec) {
  const PaddedMessage padded = pad(m);
  ChainTrace trace;
  trace.block_digests.reserve(padded.blocks.size());
  ChainKey running = key;
  for (const Block& block : padded.blocks) {
    const ChainStep step = chain_step(running, block, t, exec);
    trace.block_digests.push_back(step.block_digest);
    running = step.next_key;
  }
  trace.digest = to_digest(running);
  return trace;
}

Digest hash_message(const Message& m, const ChainKey& key, int t, Execution exec) {
  return hash_message_traced(m, key, t, exec).digest;
}

std::string format_digest(const Digest& d) {
  std::array<std::uint8_t, 16> bytes{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t b = 0; b < 4; ++b) {
      bytes[4 * i + b] = static_cast<std::uint8_t>(d.words[i] >> (24 - 8 * b));
    }
  }
  return to_hex(bytes);
}

Digest parse_digest(std::string_view hex) {
  if (hex.size() != 32) throw FormatError("digest must be exactly 32 hex digits");
  return to_digest(ChainKey::from_hex(hex));
}

std::string format_golden_line(const GoldenVector& v) {
  if (v.message.size_bits() % 8 != 0) {
    throw FormatError("golden vectors hold whole-byte messages only");
  }
  return v.key.to_hex() + "," + to_hex(v.message.bytes()) + "," + std::to_string(v.t) + "," +
         format_digest(v.digest);
}

GoldenVector parse_golden_line(std::string_view line) {
  std::array<std::string_view, 4> fields;
  std::size_t start = 0;
  for (std::size_t f = 0; f < 4; ++f) {
    const std::size_t comma = line.find(',', start);
    if ((f < 3) == (comma == std::string_view::npos)) {
      throw FormatError("golden record needs exactly 4 comma-separated fields");
    }
    fields[f] = line.substr(start, f < 3 ? comma - start : std::string_view::npos);
    start = comma + 1;
  }
  GoldenVector v;
  v.key = ChainKey::from_hex(fields[0]);
  v.message = Message::from_bytes(from_hex(fields[1]));
  const auto [ptr, ec] =
      std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), v.t);
  if (ec != std::errc{} || ptr != fields[2].data() + fields[2].size() || v.t < 1) {
    throw FormatError("bad iteration count '" + std::string(fields[2]) + "'");
  }
  v.digest = parse_digest(fields[3]);
  return v;
}

void write_golden_vectors(std::ostream& out, std::span<const GoldenVector> vectors) {
  for (const GoldenVector& v : vectors) out << format_golden_line(v) << '\n';
}

std::vector<GoldenVector> read_golden_vectors(std::istream& in) {
  std::vector<GoldenVector> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out.push_back(parse_golden_line(line));
  }
  return out;
}

std::vector<GoldenVector> golden_corpus() {
  const ChainKey ascii_key = ChainKey::from_ascii("0123456789abcdef");
  const ChainKey zero_key;
  const ChainKey counting_key = ChainKey::from_hex("000102030405060708090A0B0C0D0E0F");
  const ChainKey ones_key = ChainKey::from_hex("FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFF");
  const ChainKey mixed_key = ChainKey::from_hex("3C6EF372A54FF53A510E527F9B05688C");

  auto bytes_of = [](std::size_t n, auto fn) {
    std::vector<std::uint8_t> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>(fn(i));
    return Message::from_bytes(b);
  };
  const Message cnn = Message::from_string(
      "Cellular neural networks (CNN) chaotic secure communication is a new secure "
      "communication scheme based on chaotic synchronization.");

  std::vector<GoldenVector> c;
  auto add = [&](const ChainKey& k, Message m, int t) { c.push_back({k, std::move(m), t, {}}); };
  add(ascii_key, cnn, 50);
  add(ascii_key, Message{}, 50);
  add(ascii_key, Message::from_string("a"), 50);
  add(ascii_key, Message::from_string("abc"), 50);
  add(zero_key, Message{}, 50);
  add(zero_key, cnn, 50);
  add(counting_key, bytes_of(128, [](std::size_t i) { return i; }), 50);
  add(counting_key, bytes_of(127, [](std::size_t i) { return 255 - i; }), 50);
  add(counting_key, bytes_of(129, [](std::size_t i) { return i * 7 + 3; }), 50);
  add(ones_key, bytes_of(64, [](std::size_t) { return 0xFF; }), 50);
  add(ones_key, bytes_of(256, [](std::size_t) { return 0x00; }), 50);
  add(mixed_key, Message::from_string("The quick brown fox jumps over the lazy dog"), 50);
  add(mixed_key, Message::from_string("The quick brown fox jumps over the lazy dog."), 50);
  add(mixed_key, bytes_of(300, [](std::size_t i) { return (i * i) ^ (i >> 3); }), 50);
  add(mixed_key, bytes_of(640, [](std::size_t i) { return i % 251; }), 50);
  add(ascii_key, cnn, 64);
  add(ascii_key, cnn, 100);
  add(counting_key, Message::from_string("abc"), 128);
  add(zero_key, bytes_of(1, [](std::size_t) { return 0x80; }), 75);
  add(ones_key, cnn, 200);
  return c;
}

std::vector<GoldenVector> generate_golden_vectors() {
  std::vector<GoldenVector> out = golden_corpus();
  for (GoldenVector& v : out) v.digest = hash_message(v.message, v.key, v.t);
  return out;
}

}  // namespace nnhash
