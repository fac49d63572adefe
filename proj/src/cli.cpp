#include "nnhash/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <vector>

#include "nnhash/analysis.hpp"
#include "nnhash/hash_mode.hpp"
#include "nnhash/hex.hpp"

namespace nnhash::cli {

namespace {

struct RawOptions {
  std::string key_hex;
  std::string key_ascii;
  std::string key_file;
  std::string input;
  std::string output;
  bool no_parallel = false;
};

ChainKey read_key_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read key file '" + path.string() + "'");
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (raw.size() != 16) throw UsageError("key file must hold exactly 16 bytes");
  std::array<std::uint8_t, 16> bytes{};
  std::copy(raw.begin(), raw.end(), bytes.begin());
  return ChainKey(bytes);
}

Message read_message(const CliConfig& config, std::istream& in) {
  std::vector<std::uint8_t> bytes;
  if (config.input) {
    std::ifstream file(*config.input, std::ios::binary);
    if (!file) throw IoError("cannot read input '" + config.input->string() + "'");
    bytes.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  } else {
    bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("cannot read standard input");
  }
  return Message::from_bytes(bytes);
}

// Runs `write` against the --out file, or `out` when none was given.
template <typename Fn>
void with_output(const CliConfig& config, std::ostream& out, Fn write) {
  if (!config.output) {
    write(out);
    return;
  }
  std::ofstream file(*config.output, std::ios::binary);
  if (!file) throw IoError("cannot open '" + config.output->string() + "' for writing");
  write(file);
  file.flush();
  if (!file) throw IoError("write to '" + config.output->string() + "' failed");
}

void print_summary(std::ostream& out, const char* label, const HdrReport& r) {
  out << label << " flips=" << r.per_flip.size() << " mean=" << r.mean << " min=" << r.min
      << " max=" << r.max << '\n';
}

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

}  // namespace

CliConfig parse_args(std::span<const std::string> args) {
  CliConfig config;
  RawOptions raw;

  CLI::App app{"Keyed chaotic neural-network hash and its analysis experiments", "nnhash"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--key-hex", raw.key_hex, "128-bit key as 32 hex digits");
    sub->add_option("--key-ascii", raw.key_ascii, "128-bit key as exactly 16 raw characters");
    sub->add_option("--key-file", raw.key_file, "file holding the 16 raw key bytes");
    sub->add_option("--t", config.t, "chaotic map iterations per f^t (>= 50)");
    sub->add_flag("--no-parallel", raw.no_parallel, "evaluate neurons sequentially");
    sub->add_flag("--unsafe-small-t", config.unsafe_small_t,
                  "allow 1 <= t < 50 (test use only; weakens the hash)");
    sub->add_option("--out", raw.output, "output path (directory for 'sensitivity')");
  };

  CLI::App* hash = app.add_subcommand("hash", "print the digest of a file or standard input");
  CLI::App* sens = app.add_subcommand("sensitivity", "message-bit and key-bit avalanche sweeps");
  CLI::App* bday = app.add_subcommand("birthday", "collision count on truncated digests");
  CLI::App* ops = app.add_subcommand("opcount", "instrumented single-block operation counts");
  CLI::App* gold = app.add_subcommand("goldens", "regenerate the golden-vector file");
  for (CLI::App* sub : {hash, sens, bday, ops, gold}) add_common(sub);
  for (CLI::App* sub : {hash, sens}) sub->add_option("input", raw.input, "input file (default stdin)");
  bday->add_option("--seed", config.seed, "RNG seed");
  bday->add_option("--width", config.width, "truncation width in bits (8..32)");
  bday->add_option("--trials", config.trials, "number of random messages");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string& name = chosen->get_name();
  if (name == "hash") config.command = Command::hash;
  else if (name == "sensitivity") config.command = Command::sensitivity;
  else if (name == "birthday") config.command = Command::birthday;
  else if (name == "opcount") config.command = Command::opcount;
  else config.command = Command::goldens;

  const int key_sources =
      !raw.key_hex.empty() + !raw.key_ascii.empty() + !raw.key_file.empty();
  if (key_sources != 1) {
    throw UsageError("exactly one of --key-hex, --key-ascii, --key-file is required");
  }
  try {
    if (!raw.key_hex.empty()) config.key = ChainKey::from_hex(raw.key_hex);
    if (!raw.key_ascii.empty()) config.key = ChainKey::from_ascii(raw.key_ascii);
  } catch (const FormatError& e) {
    throw UsageError(e.what());
  }
  if (!raw.key_file.empty()) config.key = read_key_file(raw.key_file);

  if (config.t < 1) throw UsageError("--t must be at least 1");
  if (config.t < kProductionIterations && !config.unsafe_small_t) {
    throw UsageError("--t below 50 requires --unsafe-small-t");
  }
  if (config.command == Command::birthday) {
    if (config.width < 8 || config.width > 32) throw UsageError("--width must lie in [8, 32]");
    if (config.trials < 2) throw UsageError("--trials must be at least 2");
  }
  config.parallel = !raw.no_parallel;
  if (!raw.input.empty()) config.input = raw.input;
  if (!raw.output.empty()) config.output = raw.output;
  return config;
}

int run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  const Execution exec = config.parallel ? Execution::parallel : Execution::sequential;
  try {
    switch (config.command) {
      case Command::hash: {
        const Message m = read_message(config, in);
        const std::string line = format_digest(hash_message(m, config.key, config.t, exec));
        with_output(config, out, [&](std::ostream& os) { os << line << '\n'; });
        break;
      }
      case Command::sensitivity: {
        const Message m = read_message(config, in);
        if (m.empty()) throw UsageError("sensitivity needs a non-empty message");
        const HdrReport msg = message_sensitivity_sweep(m, config.key, config.t, exec);
        const HdrReport key = key_sensitivity_sweep(m, config.key, config.t, exec);
        if (config.output) {
          std::filesystem::create_directories(*config.output);
          emit_csv(msg, *config.output / "message_hdr.csv");
          emit_csv(key, *config.output / "key_hdr.csv");
        }
        print_summary(out, "message", msg);
        print_summary(out, "key", key);
        break;
      }
      case Command::birthday: {
        const BirthdayReport r =
            birthday_experiment(config.width, config.trials, config.key, config.t, config.seed);
        with_output(config, out, [&](std::ostream& os) { emit_csv(r, os); });
        break;
      }
      case Command::opcount: {
        Block block;
        std::iota(block.words.begin(), block.words.end(), 0u);
        const OpCountReport r = count_operations(config.t, config.key, block);
        with_output(config, out, [&](std::ostream& os) { emit_csv(r, os); });
        break;
      }
      case Command::goldens: {
        const std::vector<GoldenVector> v = generate_golden_vectors();
        with_output(config, out, [&](std::ostream& os) { write_golden_vectors(os, v); });
        break;
      }
    }
  } catch (const UsageError& e) {
    err << "nnhash: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "nnhash: " << one_line(e.what()) << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    err << "nnhash: " << one_line(e.what()) << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "nnhash: " << one_line(e.what()) << '\n';
    return kExitIo;
  }
  return kExitOk;
}

int run_cli(std::span<const std::string> args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CliConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "nnhash: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "nnhash: " << one_line(e.what()) << '\n';
    return kExitIo;
  }
  return run(config, in, out, err);
}

}  // namespace nnhash::cli
