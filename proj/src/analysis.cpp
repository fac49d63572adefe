#include "nnhash/analysis.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <execution>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <string>

namespace nnhash {

double hdr(const Digest& a, const Digest& b) {
  int bits = 0;
  for (std::size_t i = 0; i < 4; ++i) bits += std::popcount(a.words[i] ^ b.words[i]);
  return static_cast<double>(bits) / 128.0;
}

double HdrReport::fraction_within(double lo, double hi) const {
  if (per_flip.empty()) return 0.0;
  const auto n = std::count_if(per_flip.begin(), per_flip.end(),
                               [&](const HdrEntry& e) { return e.hdr >= lo && e.hdr <= hi; });
  return static_cast<double>(n) / static_cast<double>(per_flip.size());
}

HdrReport make_hdr_report(std::vector<HdrEntry> per_flip) {
  HdrReport r;
  r.per_flip = std::move(per_flip);
  if (r.per_flip.empty()) return r;
  double sum = 0.0;
  r.min = r.max = r.per_flip.front().hdr;
  for (const HdrEntry& e : r.per_flip) {
    sum += e.hdr;
    r.min = std::min(r.min, e.hdr);
    r.max = std::max(r.max, e.hdr);
  }
  r.mean = sum / static_cast<double>(r.per_flip.size());
  return r;
}

namespace {

// Evaluates fn(i) for i in [0, n) into slot i, so the result is independent
// of scheduling.
template <typename Fn>
std::vector<HdrEntry> sweep(std::size_t n, Execution exec, Fn fn) {
  std::vector<HdrEntry> out(n);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto body = [&](std::size_t i) { out[i] = {i, fn(i)}; };
  if (exec == Execution::parallel) {
    std::for_each(std::execution::par, idx.begin(), idx.end(), body);
  } else {
    std::for_each(idx.begin(), idx.end(), body);
  }
  return out;
}

}  // namespace

HdrReport message_sensitivity_sweep(const Message& m, const ChainKey& key, int t,
                                    Execution exec) {
  if (m.empty()) throw std::invalid_argument("message sensitivity sweep needs a non-empty message");
  const Digest base = hash_message(m, key, t);
  const std::size_t n = std::min<std::size_t>(1024, m.size_bits());
  return make_hdr_report(sweep(n, exec, [&](std::size_t i) {
    Message flipped = m;
    flipped.flip_bit(i);
    return hdr(base, hash_message(flipped, key, t));
  }));
}

HdrReport key_sensitivity_sweep(const Message& m, const ChainKey& key, int t, Execution exec) {
  const Digest base = hash_message(m, key, t);
  return make_hdr_report(sweep(128, exec, [&](std::size_t i) {
    return hdr(base, hash_message(m, key.with_bit_flipped(i), t));
  }));
}

double expected_collisions(std::uint64_t trials, int width) {
  const double n = static_cast<double>(trials);
  return n * (n - 1.0) / 2.0 / std::ldexp(1.0, width);
}

BirthdayReport birthday_experiment(int width, std::uint64_t trials, const ChainKey& key, int t,
                                   std::uint64_t seed) {
  if (width < 8 || width > 32) throw std::invalid_argument("birthday width must be in [8, 32]");
  if (trials < 2) throw std::invalid_argument("birthday experiment needs at least 2 trials");

  std::mt19937_64 rng(seed);
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<Message> messages;
  messages.reserve(trials);
  while (messages.size() < trials) {
    std::vector<std::uint8_t> bytes(128);
    for (std::size_t i = 0; i < bytes.size(); i += 8) {
      const std::uint64_t r = rng();
      for (std::size_t b = 0; b < 8; ++b) bytes[i + b] = static_cast<std::uint8_t>(r >> (56 - 8 * b));
    }
    if (seen.insert(bytes).second) messages.push_back(Message::from_bytes(bytes));
  }

  std::vector<std::uint32_t> truncated(trials);
  std::vector<std::size_t> idx(trials);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::for_each(std::execution::par, idx.begin(), idx.end(), [&](std::size_t i) {
    truncated[i] = hash_message(messages[i], key, t).words[0] >> (32 - width);
  });
  std::sort(truncated.begin(), truncated.end());

  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < truncated.size();) {
    std::size_t j = i;
    while (j < truncated.size() && truncated[j] == truncated[i]) ++j;
    const std::uint64_t run = j - i;
    pairs += run * (run - 1) / 2;
    i = j;
  }

  BirthdayReport r;
  r.truncation_width = width;
  r.trials = trials;
  r.seed = seed;
  r.collisions_observed = pairs;
  r.collisions_expected = expected_collisions(trials, width);
  return r;
}

OpCountReport count_operations(int t, const ChainKey& key, const Block& block) {
  if (t < 0) throw std::invalid_argument("iteration count must be non-negative");
  using S = CountedScalar;
  OpTally total;
  TallyScope scope(total);

  const std::vector<S> stream = detail::subkey_stream_unchecked<S>(key, layout::kSubKeyCount, t);
  const BasicSubKeys<S> keys = assign_subkeys<S>(stream);
  const OpTally after_keys = total;

  const BlockSignal<S> p = quantize_block<S>(block);
  const OpTally after_quantize = total;

  const Signal8<S> c = input_layer<S>(p, keys.w0, keys.b0, keys.q0, t);
  const Signal8<S> d = hidden_layer<S>(c, keys.w1, keys.b1, keys.q1);
  const Signal4<S> h = output_layer<S>(d, keys.w2, keys.b2, keys.q2, t);
  const OpTally after_layers = total;

  extract_digest<S>(h);

  OpCountReport r;
  r.key_schedule = after_keys;
  r.quantize = after_quantize - after_keys;
  r.layers = after_layers - after_quantize;
  r.extract = total - after_layers;
  r.mul_div = total.mul_div();
  r.add_sub = total.add_sub();
  // Extraction multiplies each output once by 2^32.
  for (int j = 0; j < 4; ++j) {
    r.critical_path_mul_div =
        std::max<std::uint64_t>(r.critical_path_mul_div, h(j).path_mul_div() + 1);
    r.critical_path_add_sub = std::max<std::uint64_t>(r.critical_path_add_sub, h(j).path_add_sub());
  }
  return r;
}

OpCountReport count_operations(int t) {
  Block block;
  std::iota(block.words.begin(), block.words.end(), 0u);
  return count_operations(t, ChainKey::from_ascii("0123456789abcdef"), block);
}

void emit_csv(const HdrReport& report, std::ostream& out) {
  out << "bit_index,hdr\n";
  out << std::setprecision(17);
  for (const HdrEntry& e : report.per_flip) out << e.bit_index << ',' << e.hdr << '\n';
}

void emit_csv(const BirthdayReport& r, std::ostream& out) {
  out << "truncation_width,trials,seed,collisions_observed,collisions_expected\n";
  out << std::setprecision(17) << r.truncation_width << ',' << r.trials << ',' << r.seed << ','
      << r.collisions_observed << ',' << r.collisions_expected << '\n';
}

void emit_csv(const OpCountReport& r, std::ostream& out) {
  out << "mul_div,add_sub,critical_path_mul_div,critical_path_add_sub\n";
  out << r.mul_div << ',' << r.add_sub << ',' << r.critical_path_mul_div << ','
      << r.critical_path_add_sub << '\n';
}

namespace {

template <typename Report>
void emit_csv_file(const Report& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  emit_csv(report, out);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

void emit_csv(const HdrReport& report, const std::filesystem::path& path) {
  emit_csv_file(report, path);
}
void emit_csv(const BirthdayReport& report, const std::filesystem::path& path) {
  emit_csv_file(report, path);
}
void emit_csv(const OpCountReport& report, const std::filesystem::path& path) {
  emit_csv_file(report, path);
}

std::vector<HdrEntry> parse_hdr_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "bit_index,hdr") {
    throw FormatError("missing 'bit_index,hdr' header");
  }
  std::vector<HdrEntry> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw FormatError("bad hdr row '" + line + "'");
    HdrEntry e;
    const char* end = line.data() + line.size();
    const auto a = std::from_chars(line.data(), line.data() + comma, e.bit_index);
    const auto b = std::from_chars(line.data() + comma + 1, end, e.hdr);
    if (a.ec != std::errc{} || a.ptr != line.data() + comma || b.ec != std::errc{} || b.ptr != end) {
      throw FormatError("bad hdr row '" + line + "'");
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace nnhash
