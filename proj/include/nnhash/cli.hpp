// Command-line front end, kept in the library so tests can drive it directly.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "nnhash/key_schedule.hpp"

namespace nnhash::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::uint64_t kDefaultSeed = 20060101;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { hash, sensitivity, birthday, opcount, goldens };

struct CliConfig {
  Command command = Command::hash;
  ChainKey key;
  int t = 50;
  bool parallel = true;
  bool unsafe_small_t = false;
  std::uint64_t seed = kDefaultSeed;
  int width = 16;
  std::uint64_t trials = 1000;
  std::optional<std::filesystem::path> output;  // unset: standard output
  std::optional<std::filesystem::path> input;   // unset: standard input
};

/// args excludes the program name. Throws UsageError (including for --help,
/// see HelpRequested).
CliConfig parse_args(std::span<const std::string> args);

/// Thrown by parse_args for --help; what() holds the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Executes a parsed configuration. Returns the process exit status; errors
/// are reported as one line on `err`.
int run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-status mapping.
int run_cli(std::span<const std::string> args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace nnhash::cli
