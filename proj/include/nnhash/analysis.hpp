// Experiment harness: avalanche sweeps, truncated-digest birthday runs, and
// instrumented operation counts.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "nnhash/hash_mode.hpp"
#include "nnhash/hex.hpp"
#include "nnhash/op_count.hpp"

namespace nnhash {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hamming distance ratio: popcount(a ^ b) / 128.
double hdr(const Digest& a, const Digest& b);

struct HdrEntry {
  std::size_t bit_index = 0;
  double hdr = 0.0;
  friend bool operator==(const HdrEntry&, const HdrEntry&) = default;
};

struct HdrReport {
  std::vector<HdrEntry> per_flip;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;

  /// Fraction of entries with lo <= hdr <= hi.
  double fraction_within(double lo, double hi) const;
};

/// Fills mean/min/max from per_flip (all zero when empty).
HdrReport make_hdr_report(std::vector<HdrEntry> per_flip);

/// Flips each of the first min(1024, |m|) message bits in turn and records the
/// digest Hdr against the unflipped message.
HdrReport message_sensitivity_sweep(const Message& m, const ChainKey& key, int t,
                                    Execution exec = Execution::parallel);

/// As above over all 128 key bits.
HdrReport key_sensitivity_sweep(const Message& m, const ChainKey& key, int t,
                                Execution exec = Execution::parallel);

struct BirthdayReport {
  int truncation_width = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t collisions_observed = 0;
  double collisions_expected = 0.0;
};

/// trials (trials - 1) / 2 / 2^width.
double expected_collisions(std::uint64_t trials, int width);

/// Hashes `trials` distinct random 1024-bit messages, keeps the top `width`
/// digest bits and counts colliding unordered pairs.
BirthdayReport birthday_experiment(int width, std::uint64_t trials, const ChainKey& key, int t,
                                   std::uint64_t seed);

struct OpCountReport {
  std::uint64_t mul_div = 0;
  std::uint64_t add_sub = 0;
  std::uint64_t critical_path_mul_div = 0;
  std::uint64_t critical_path_add_sub = 0;

  // Per-stage totals of the sequential count.
  OpTally key_schedule;  // sub-key stream and parameter derivation
  OpTally quantize;      // block words to unit values
  OpTally layers;        // the three neuron layers
  OpTally extract;       // unit values to digest words
};

/// Instrumented single-block hash (key expansion, quantization, three layers,
/// digest extraction). t = 0 is accepted here and skips every f^t.
OpCountReport count_operations(int t, const ChainKey& key, const Block& block);
/// Same, for the ASCII key "0123456789abcdef" and the block of words 0..31.
OpCountReport count_operations(int t);

void emit_csv(const HdrReport& report, std::ostream& out);
void emit_csv(const BirthdayReport& report, std::ostream& out);
void emit_csv(const OpCountReport& report, std::ostream& out);

/// Path overloads; throw IoError when the file cannot be written.
void emit_csv(const HdrReport& report, const std::filesystem::path& path);
void emit_csv(const BirthdayReport& report, const std::filesystem::path& path);
void emit_csv(const OpCountReport& report, const std::filesystem::path& path);

/// Reads `bit_index,hdr` rows back. Throws FormatError.
std::vector<HdrEntry> parse_hdr_csv(std::istream& in);

}  // namespace nnhash
