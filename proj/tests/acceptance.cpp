// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Thresholds and time budgets are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "nnhash/analysis.hpp"
#include "nnhash/hash_mode.hpp"
#include "reference_network.hpp"
#include "test_util.hpp"

using namespace nnhash;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

const ChainKey kPaperKey = ChainKey::from_ascii("0123456789abcdef");

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome message_avalanche() {
  const Message m = Message::from_string(testutil::kCnnText);
  const HdrReport r = message_sensitivity_sweep(m, kPaperKey, 50);
  const double in_band = r.fraction_within(0.32, 0.68);
  return {r.per_flip.size() == 1024 && r.mean >= 0.45 && r.mean <= 0.55 && in_band >= 0.99,
          fmt("flips=%zu mean=%.4f min=%.4f max=%.4f in[0.32,0.68]=%.4f", r.per_flip.size(),
              r.mean, r.min, r.max, in_band)};
}

Outcome key_avalanche() {
  const Message m = Message::from_string(testutil::kCnnText);
  const HdrReport r = key_sensitivity_sweep(m, kPaperKey, 50);
  return {r.per_flip.size() == 128 && r.mean >= 0.45 && r.mean <= 0.55 && r.min > 0.2,
          fmt("flips=%zu mean=%.4f min=%.4f max=%.4f", r.per_flip.size(), r.mean, r.min, r.max)};
}

Outcome chain_identity() {
  std::mt19937_64 rng(301);
  int ok = 0;
  for (int i = 0; i < 100; ++i) {
    const ChainKey k = testutil::random_key(rng);
    const Message m = testutil::random_message(rng, 2048 + rng() % 1024);
    const ChainTrace tr = hash_message_traced(m, k, 50);
    ok += tr.block_digests.size() == 3 &&
          tr.digest == (to_digest(k) ^ tr.block_digests[0] ^ tr.block_digests[1] ^
                        tr.block_digests[2]) &&
          tr.digest == hash_message(m, k, 50);
  }
  return {ok == 100, fmt("%d/100 three-block messages satisfy the XOR fold", ok)};
}

Outcome parallel_fidelity() {
  std::mt19937_64 rng(401);
  int ok = 0;
  for (int i = 0; i < 1000; ++i) {
    const ChainKey k = testutil::random_key(rng);
    const Message m = testutil::random_message(rng, rng() % 5001);
    ok += hash_message(m, k, 50, Execution::sequential) == hash_message(m, k, 50, Execution::parallel);
  }
  return {ok == 1000, fmt("%d/1000 pairs bitwise equal", ok)};
}

Outcome operation_counts() {
  const OpCountReport r = count_operations(50);
  const double ratio = static_cast<double>(r.mul_div) / static_cast<double>(r.critical_path_mul_div);
  auto within = [](double v, double ref, double factor) { return v >= ref / factor && v <= ref * factor; };
  const bool pass = within(r.mul_div, 1088, 1.5) && within(r.add_sub, 1719, 1.5) &&
                    within(r.critical_path_mul_div, 203, 2.0) &&
                    within(r.critical_path_add_sub, 291, 2.0) && ratio >= 3.0;
  return {pass, fmt("mul_div=%llu (1088) add_sub=%llu (1719) cp_mul_div=%llu (203) "
                    "cp_add_sub=%llu (291) ratio=%.2f",
                    static_cast<unsigned long long>(r.mul_div),
                    static_cast<unsigned long long>(r.add_sub),
                    static_cast<unsigned long long>(r.critical_path_mul_div),
                    static_cast<unsigned long long>(r.critical_path_add_sub), ratio)};
}

Outcome birthday() {
  int in_band = 0;
  std::string counts;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const BirthdayReport r = birthday_experiment(16, 1000, kPaperKey, 50, seed);
    const double e = r.collisions_expected;
    const double o = static_cast<double>(r.collisions_observed);
    in_band += o >= e - 3.0 * std::sqrt(e) && o <= e + 3.0 * std::sqrt(e);
    counts += std::to_string(r.collisions_observed) + (seed < 10 ? "," : "");
  }
  return {in_band >= 9, fmt("expected=%.2f observed=[%s] in-band=%d/10",
                            expected_collisions(1000, 16), counts.c_str(), in_band)};
}

Outcome map_core() {
  std::mt19937_64 rng(701);
  bool range = true;
  for (int i = 0; i < 1000000; ++i) {
    const double x = testutil::unit(rng);
    const double q = ChaosParam::kMin + testutil::unit(rng) * (ChaosParam::kMax - ChaosParam::kMin);
    const double y = map_step(x, q);
    range = range && y >= 0.0 && y <= 1.0;
  }

  bool branches = true;
  for (int qi = 1; qi < 50; ++qi) {
    for (int xi = 0; xi <= 4096; ++xi) {
      const double x = xi / 4096.0;
      branches = branches && map_step(x, qi / 100.0) == reference::pwlcm(x, qi / 100.0);
    }
  }

  bool composition = true;
  for (int i = 0; i < 2000; ++i) {
    const double x = testutil::unit(rng);
    const double q = 0.01 + testutil::unit(rng) * 0.48;
    const int a = static_cast<int>(rng() % 80);
    const int b = static_cast<int>(rng() % 80);
    composition = composition && map_iter(x, q, a + b) == map_iter(map_iter(x, q, a), q, b);
  }

  double worst_symmetry = 0.0;
  for (int n = 0; n < 20000;) {
    const double q = 0.01 + testutil::unit(rng) * 0.48;
    const double x = testutil::unit(rng);
    const double y = 1.0 - x;
    auto interior = [&](double v) {
      return std::fabs(v - q) > 1e-9 && std::fabs(v - 0.5) > 1e-9 &&
             std::fabs(v - (1.0 - q)) > 1e-9 && v > 1e-9 && v < 1.0 - 1e-9;
    };
    if (!interior(x) || !interior(y)) continue;
    worst_symmetry = std::max(worst_symmetry, std::fabs(map_step(x, q) - map_step(y, q)));
    ++n;
  }

  const double probe = divergence_probe(0x1p-32, ChaosParam(0.25), 50, 1000, 7);
  const bool pass = range && branches && composition && worst_symmetry <= 1e-12 && probe >= 0.9;
  return {pass, fmt("range=%s branches=%s composition=%s symmetry=%.3g divergence(2^-32,0.25,50)=%.3f",
                    range ? "ok" : "FAIL", branches ? "ok" : "FAIL", composition ? "ok" : "FAIL",
                    worst_symmetry, probe)};
}

Outcome padding() {
  const Message cnn = Message::from_string(testutil::kCnnText);
  const PaddedMessage p = pad(cnn);
  auto bit_at = [&](std::size_t i) {
    return (p.blocks[i / 1024].words[(i % 1024) / 32] >> (31 - i % 32)) & 1u;
  };
  std::size_t zeros = 0;
  for (std::size_t i = 1041; i < 2048; ++i) zeros += bit_at(i) == 0;
  const bool cnn_ok = cnn.size_bits() == 1040 && p.blocks.size() == 2 && bit_at(1040) == 1 && zeros == 1007;

  std::mt19937_64 rng(801);
  std::vector<std::size_t> lengths{0, 1, 1023, 1024, 1025, 2047, 2048, 1040};
  for (int i = 0; i < 60; ++i) lengths.push_back(rng() % 4096);
  std::map<std::vector<std::uint32_t>, Message> seen;
  bool identity = true;
  bool injective = true;
  for (std::size_t len : lengths) {
    for (int v = 0; v < 3; ++v) {
      const Message m = testutil::random_message(rng, len);
      const PaddedMessage pm = pad(m);
      identity = identity && unpad(pm) == m;
      std::vector<std::uint32_t> flat;
      for (const Block& b : pm.blocks) flat.insert(flat.end(), b.words.begin(), b.words.end());
      const auto [it, fresh] = seen.emplace(flat, m);
      injective = injective && (fresh || it->second == m);
    }
  }
  identity = identity && unpad(pad(cnn)) == cnn;
  return {cnn_ok && identity && injective,
          fmt("1040-bit case=%s unpad(pad)=%s injective=%s", cnn_ok ? "ok" : "FAIL",
              identity ? "ok" : "FAIL", injective ? "ok" : "FAIL")};
}

Outcome golden_vectors() {
  std::ifstream in(NNHASH_TEST_DATA_DIR "/golden_vectors.csv");
  if (!in) return {false, "golden_vectors.csv missing"};
  const std::vector<GoldenVector> frozen = read_golden_vectors(in);
  int ok = 0;
  for (const GoldenVector& v : frozen) ok += hash_message(v.message, v.key, v.t) == v.digest;
  return {frozen.size() == 20 && ok == 20,
          fmt("%d/%zu records regenerate bit-identically", ok, frozen.size())};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "avalanche, message bits", 30, message_avalanche},
      {2, "avalanche, key bits", 10, key_avalanche},
      {3, "chain identity", 30, chain_identity},
      {4, "parallel fidelity", 120, parallel_fidelity},
      {5, "operation counts", 1, operation_counts},
      {6, "birthday behavior", 60, birthday},
      {7, "map core", 10, map_core},
      {8, "padding", 1, padding},
      {9, "golden vectors", 1, golden_vectors},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("[%s] %d. %s: %s (%.2fs, budget %.0fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget_seconds, in_time ? "" : ", OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
