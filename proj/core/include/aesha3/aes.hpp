#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace aesha3::aes {

inline constexpr std::size_t kBlockBytes = 16;
inline constexpr std::size_t kRoundKeyBits = 128;

using Block = std::array<std::uint8_t, kBlockBytes>;

enum class Variant { A128, A192, A256 };

constexpr std::size_t key_bytes(Variant v) {
    switch (v) {
        case Variant::A128: return 16;
        case Variant::A192: return 24;
        case Variant::A256: return 32;
    }
    return 0;
}

constexpr int rounds(Variant v) {
    switch (v) {
        case Variant::A128: return 10;
        case Variant::A192: return 12;
        case Variant::A256: return 14;
    }
    return 0;
}

/// One more than the round count: the extra key is the whitening key.
constexpr std::size_t round_key_count(Variant v) {
    return static_cast<std::size_t>(rounds(v)) + 1;
}

std::string_view variant_name(Variant v);  // "128" / "192" / "256"

/// The 16-byte cipher state, column-major: the byte at row r, column c of the
/// 4x4 matrix is bytes[4c + r], so the flat array orders bytes exactly like
/// the block they came from.
struct AesState {
    std::array<std::uint8_t, kBlockBytes> bytes{};

    static AesState from_block(const Block& b) { return AesState{b}; }
    Block to_block() const { return bytes; }

    std::uint8_t& at(int row, int col) { return bytes[static_cast<std::size_t>(4 * col + row)]; }
    std::uint8_t at(int row, int col) const { return bytes[static_cast<std::size_t>(4 * col + row)]; }

    bool operator==(const AesState&) const = default;
};

/// A 128-bit round key in the same column-major byte layout as the state.
struct RoundKey {
    std::array<std::uint8_t, kBlockBytes> bytes{};

    bool operator==(const RoundKey&) const = default;
};

struct RoundKeySchedule {
    Variant variant = Variant::A128;
    std::vector<RoundKey> keys;

    /// Throws std::invalid_argument unless keys.size() is 11/13/15 per variant.
    void validate() const;
    std::size_t total_bits() const { return keys.size() * kRoundKeyBits; }
};

/// Product in GF(2^8) modulo x^8 + x^4 + x^3 + x + 1.
std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b);

/// Forward and inverse S-box lookups. The tables are generated from the
/// algebraic definition (multiplicative inverse followed by the affine map)
/// and checked against known entries at compile time.
std::uint8_t sbox(std::uint8_t v);
std::uint8_t inv_sbox(std::uint8_t v);

AesState sub_bytes(AesState s);
AesState inv_sub_bytes(AesState s);

/// Row r rotated left by r positions; the inverse rotates right.
AesState shift_rows(AesState s);
AesState inv_shift_rows(AesState s);

/// Each column multiplied by the circulant matrix (02,03,01,01); the inverse
/// uses (0e,0b,0d,09).
AesState mix_columns(AesState s);
AesState inv_mix_columns(AesState s);

/// Byte-wise XOR with the round key; self-inverse.
AesState add_round_key(AesState s, const RoundKey& k);

/// Whitening with keys[0], Nr-1 full rounds, final round without MixColumns.
Block encrypt_block(const Block& block, const RoundKeySchedule& sched);

/// Exact inverse of encrypt_block: reversed keys, inverse layers.
Block decrypt_block(const Block& block, const RoundKeySchedule& sched);

// Per-thread count of encrypt_block invocations. Diagnostic surface used by
// the benchmark self-checks; does not affect results.
std::uint64_t block_encrypt_calls() noexcept;
void reset_block_encrypt_calls() noexcept;

}  // namespace aesha3::aes
