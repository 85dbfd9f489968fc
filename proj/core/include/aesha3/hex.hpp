#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aesha3::hex {

/// Lowercase hex encoding of a byte span.
std::string encode(std::span<const std::uint8_t> bytes);

/// Decodes strict lowercase hex. Throws MalformedKeyError on odd length or
/// any character outside [0-9a-f].
std::vector<std::uint8_t> decode(std::string_view text);

}  // namespace aesha3::hex
