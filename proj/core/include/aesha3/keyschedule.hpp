#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "aesha3/aes.hpp"

namespace aesha3::keys {

using aes::Variant;

struct MasterKey {
    Variant variant = Variant::A128;
    std::vector<std::uint8_t> bytes;

    /// Infers the variant from the byte count (16/24/32); throws
    /// MalformedKeyError for anything else.
    static MasterKey from_bytes(std::span<const std::uint8_t> raw);

    void validate() const;  // byte length must match the variant
};

enum class DerivationProfile {
    StandardAes,    // sequential word expansion with the g-function
    Sha3FullState,  // sponge absorb, full-state squeeze Y_0 || Y_1 || ...
    Sha3Shake,      // SHAKE256 rate-only output stream
};

std::string_view profile_name(DerivationProfile p);  // "standard" / "sha3-full" / "sha3-shake"
std::optional<DerivationProfile> profile_from_name(std::string_view name);

/// Total schedule bits per variant: 1408 / 1664 / 1920.
constexpr std::size_t subkey_bits_required(Variant v) {
    return aes::round_key_count(v) * aes::kRoundKeyBits;
}

/// FIPS-197 word expansion: RotWord, SubWord, Rcon, plus the extra SubWord
/// rule for 256-bit keys. Round key 0 is the first 128 bits of the master key.
aes::RoundKeySchedule expand_key_standard(const MasterKey& mk);

/// Sponge-derived schedule: absorbs the raw master-key bytes, squeezes the
/// variant's required bits (full-state Y_i blocks or the SHAKE256 stream)
/// and slices them sequentially into 128-bit round keys, first slice first.
/// Rejects the StandardAes profile.
aes::RoundKeySchedule derive_subkeys_sha3(const MasterKey& mk, DerivationProfile profile);

/// Dispatches to the provider selected by the profile.
aes::RoundKeySchedule derive_schedule(const MasterKey& mk, DerivationProfile profile);

// Key file format: lowercase hex, one key per line (32/48/64 hex chars).
MasterKey parse_key_hex(std::string_view line);
std::vector<MasterKey> load_key_file(const std::filesystem::path& path);
void write_key_file(const std::filesystem::path& path, const MasterKey& mk);

}  // namespace aesha3::keys
