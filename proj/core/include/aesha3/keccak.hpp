#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace aesha3::keccak {

inline constexpr unsigned kStateBits = 1600;
inline constexpr std::size_t kStateBytes = 200;
inline constexpr int kRounds = 24;

/// 5x5 grid of 64-bit lanes. Lane (x, y) lives at index x + 5*y, which is
/// also its serialization order: lane (x, y) occupies byte offsets
/// 8*(5y + x) .. 8*(5y + x) + 7, little-endian within the lane.
struct KeccakState {
    std::array<std::uint64_t, 25> lanes{};

    std::uint64_t& lane(int x, int y) { return lanes[static_cast<std::size_t>(x + 5 * y)]; }
    std::uint64_t lane(int x, int y) const { return lanes[static_cast<std::size_t>(x + 5 * y)]; }

    bool operator==(const KeccakState&) const = default;
};

std::array<std::uint8_t, kStateBytes> to_bytes(const KeccakState& s);
KeccakState state_from_bytes(std::span<const std::uint8_t> bytes);  // expects 200 bytes

// The five step mappings of one round, exposed individually so callers can
// probe or instrument the permutation round by round.
void theta(KeccakState& s);
void rho(KeccakState& s);
void pi(KeccakState& s);
void chi(KeccakState& s);
void iota(KeccakState& s, int round);

/// One round: theta, rho, pi, chi, iota with the round's constant.
void keccak_round(KeccakState& s, int round);

/// Keccak-f[1600]: all 24 rounds. Total function, bijective on states.
KeccakState keccak_f(KeccakState s);

struct SpongeParams {
    unsigned rate_bits;        // multiple of 8, in (0, 1600)
    unsigned capacity_bits;    // rate_bits + capacity_bits == 1600
    // Delimited suffix byte: the domain-separation bits followed by the
    // leading 1 of pad10*1, in the byte-level convention (0x06 for SHA3,
    // 0x1f for SHAKE/XOF use).
    std::uint8_t domain_suffix;

    /// Throws std::invalid_argument when the rate/capacity invariants fail.
    void validate() const;

    static constexpr SpongeParams sha3_256() { return {1088, 512, 0x06}; }
    static constexpr SpongeParams shake256() { return {1088, 512, 0x1F}; }
};

enum class SqueezeProfile {
    RateOnly,   // read rate_bits per squeeze step (standard sponge output)
    FullState,  // read the entire 1600-bit state per squeeze step
};

/// Absorbs a message: appends the domain suffix and pad10*1 (a whole extra
/// block when the message already fills the last block), XORs each rate-sized
/// block into the state and permutes after each block.
KeccakState absorb(std::span<const std::uint8_t> message, const SpongeParams& params);

/// Reads n_bits from the post-absorb state. RateOnly reads the rate portion
/// and permutes between reads; FullState reads the whole state as Y_0 (no
/// permutation before the first read) and permutes between reads. Output is
/// ceil(n_bits/8) bytes with unused high bits of the final byte cleared.
/// Rejects n_bits == 0.
std::vector<std::uint8_t> squeeze(KeccakState state, std::size_t n_bits,
                                  const SpongeParams& params, SqueezeProfile profile);

/// SHA3-256 digest: rate 1088, suffix 0x06, rate-only squeeze of 256 bits.
std::array<std::uint8_t, 32> sha3_256(std::span<const std::uint8_t> message);

/// SHAKE256 XOF: rate 1088, suffix 0x1f, rate-only squeeze of n_bits (> 0).
std::vector<std::uint8_t> shake256_xof(std::span<const std::uint8_t> message, std::size_t n_bits);

// Per-thread count of keccak_f invocations. Diagnostic surface used by the
// benchmark self-checks; does not affect results.
std::uint64_t permutation_calls() noexcept;
void reset_permutation_calls() noexcept;

}  // namespace aesha3::keccak
