#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nnhash {

/// Malformed textual input: bad hex, wrong length, bad record layout.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uppercase hex rendering, two digits per byte.
std::string to_hex(std::span<const std::uint8_t> bytes);

/// Accepts upper- or lowercase digits; throws FormatError on odd length or a
/// non-hex character.
std::vector<std::uint8_t> from_hex(std::string_view text);

}  // namespace nnhash
