#include "aesha3/keccak.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

namespace aesha3::keccak {

namespace {

constexpr std::array<std::uint64_t, 24> kRoundConstants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

// Rotation offsets in lane order x + 5y.
constexpr std::array<int, 25> kRhoOffsets = {
    0,  1,  62, 28, 27,  //
    36, 44, 6,  55, 20,  //
    3,  10, 43, 25, 39,  //
    41, 45, 15, 21, 8,   //
    18, 2,  61, 56, 14,
};

thread_local std::uint64_t g_permutation_calls = 0;

}  // namespace

std::array<std::uint8_t, kStateBytes> to_bytes(const KeccakState& s) {
    std::array<std::uint8_t, kStateBytes> out;
    for (std::size_t i = 0; i < 25; ++i) {
        const std::uint64_t v = s.lanes[i];
        for (int b = 0; b < 8; ++b) {
            out[8 * i + static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(v >> (8 * b));
        }
    }
    return out;
}

KeccakState state_from_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kStateBytes) {
        throw std::invalid_argument("keccak state requires exactly 200 bytes");
    }
    KeccakState s;
    for (std::size_t i = 0; i < 25; ++i) {
        std::uint64_t v = 0;
        for (int b = 7; b >= 0; --b) {
            v = (v << 8) | bytes[8 * i + static_cast<std::size_t>(b)];
        }
        s.lanes[i] = v;
    }
    return s;
}

void theta(KeccakState& s) {
    std::uint64_t c[5];
    for (int x = 0; x < 5; ++x) {
        c[x] = s.lane(x, 0) ^ s.lane(x, 1) ^ s.lane(x, 2) ^ s.lane(x, 3) ^ s.lane(x, 4);
    }
    for (int x = 0; x < 5; ++x) {
        const std::uint64_t d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
        for (int y = 0; y < 5; ++y) {
            s.lane(x, y) ^= d;
        }
    }
}

void rho(KeccakState& s) {
    for (std::size_t i = 1; i < 25; ++i) {
        s.lanes[i] = std::rotl(s.lanes[i], kRhoOffsets[i]);
    }
}

void pi(KeccakState& s) {
    // A'[x, y] = A[(x + 3y) mod 5, x]
    const KeccakState in = s;
    for (int x = 0; x < 5; ++x) {
        for (int y = 0; y < 5; ++y) {
            s.lane(x, y) = in.lane((x + 3 * y) % 5, x);
        }
    }
}

void chi(KeccakState& s) {
    for (int y = 0; y < 5; ++y) {
        std::uint64_t row[5];
        for (int x = 0; x < 5; ++x) row[x] = s.lane(x, y);
        for (int x = 0; x < 5; ++x) {
            s.lane(x, y) = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
        }
    }
}

void iota(KeccakState& s, int round) {
    s.lane(0, 0) ^= kRoundConstants[static_cast<std::size_t>(round)];
}

void keccak_round(KeccakState& s, int round) {
    theta(s);
    rho(s);
    pi(s);
    chi(s);
    iota(s, round);
}

namespace {

// Fused round from lanes `in` into lanes `out`: theta folded into the rho+pi
// scatter, chi row by row. Must stay bit-identical to keccak_round; a test
// pins keccak_f to 24 composed rounds.
inline void fast_round(const std::uint64_t in[25], std::uint64_t out[25], int round) {
    std::uint64_t c[5];
    for (int x = 0; x < 5; ++x) {
        c[x] = in[x] ^ in[x + 5] ^ in[x + 10] ^ in[x + 15] ^ in[x + 20];
    }
    std::uint64_t d[5];
    for (int x = 0; x < 5; ++x) {
        d[x] = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
    }
    std::uint64_t b[25];
    for (int x = 0; x < 5; ++x) {
        for (int y = 0; y < 5; ++y) {
            // rho rotation, then pi placement: B[y, 2x+3y] = rot(A[x,y])
            b[y + 5 * ((2 * x + 3 * y) % 5)] =
                std::rotl(in[x + 5 * y] ^ d[x], kRhoOffsets[static_cast<std::size_t>(x + 5 * y)]);
        }
    }
    for (int y = 0; y < 25; y += 5) {
        for (int x = 0; x < 5; ++x) {
            out[x + y] = b[x + y] ^ (~b[(x + 1) % 5 + y] & b[(x + 2) % 5 + y]);
        }
    }
    out[0] ^= kRoundConstants[static_cast<std::size_t>(round)];
}

}  // namespace

KeccakState keccak_f(KeccakState s) {
    std::uint64_t a[25];
    std::uint64_t b[25];
    for (int i = 0; i < 25; ++i) a[i] = s.lanes[static_cast<std::size_t>(i)];
    for (int round = 0; round < kRounds; round += 2) {
        fast_round(a, b, round);
        fast_round(b, a, round + 1);
    }
    for (int i = 0; i < 25; ++i) s.lanes[static_cast<std::size_t>(i)] = a[i];
    ++g_permutation_calls;
    return s;
}

void SpongeParams::validate() const {
    if (rate_bits == 0 || rate_bits >= kStateBits) {
        throw std::invalid_argument("sponge rate must lie in (0, 1600) bits");
    }
    if (rate_bits % 8 != 0) {
        throw std::invalid_argument("sponge rate must be a multiple of 8 bits");
    }
    if (rate_bits + capacity_bits != kStateBits) {
        throw std::invalid_argument("sponge rate + capacity must equal 1600 bits");
    }
}

KeccakState absorb(std::span<const std::uint8_t> message, const SpongeParams& params) {
    params.validate();
    const std::size_t rate_bytes = params.rate_bits / 8;

    KeccakState state;
    std::size_t offset = 0;

    auto xor_into_rate = [&](std::span<const std::uint8_t> block) {
        for (std::size_t i = 0; i < block.size(); ++i) {
            state.lanes[i / 8] ^= static_cast<std::uint64_t>(block[i]) << (8 * (i % 8));
        }
    };

    while (message.size() - offset >= rate_bytes) {
        xor_into_rate(message.subspan(offset, rate_bytes));
        state = keccak_f(state);
        offset += rate_bytes;
    }

    // Final (possibly empty) partial block with suffix and pad10*1. When the
    // message fills the last block exactly this appends an entire padding
    // block, so at least one more permutation always runs.
    const std::span<const std::uint8_t> tail = message.subspan(offset);
    xor_into_rate(tail);
    const std::size_t pos = tail.size();
    state.lanes[pos / 8] ^= static_cast<std::uint64_t>(params.domain_suffix) << (8 * (pos % 8));
    if ((params.domain_suffix & 0x80) != 0 && pos == rate_bytes - 1) {
        // Suffix already occupies the final bit slot; its pad bit spills into
        // the next block.
        state = keccak_f(state);
    }
    const std::size_t last = rate_bytes - 1;
    state.lanes[last / 8] ^= 0x80ULL << (8 * (last % 8));
    state = keccak_f(state);
    return state;
}

std::vector<std::uint8_t> squeeze(KeccakState state, std::size_t n_bits,
                                  const SpongeParams& params, SqueezeProfile profile) {
    params.validate();
    if (n_bits == 0) {
        throw std::invalid_argument("squeeze requires n_bits > 0");
    }
    const std::size_t read_bytes =
        profile == SqueezeProfile::FullState ? kStateBytes : params.rate_bits / 8;
    const std::size_t n_bytes = (n_bits + 7) / 8;

    std::vector<std::uint8_t> out;
    out.reserve(n_bytes);
    while (out.size() < n_bytes) {
        const auto block = to_bytes(state);
        const std::size_t take = std::min(read_bytes, n_bytes - out.size());
        out.insert(out.end(), block.begin(), block.begin() + static_cast<std::ptrdiff_t>(take));
        if (out.size() < n_bytes) {
            state = keccak_f(state);
        }
    }
    if (n_bits % 8 != 0) {
        out.back() &= static_cast<std::uint8_t>((1u << (n_bits % 8)) - 1);
    }
    return out;
}

std::array<std::uint8_t, 32> sha3_256(std::span<const std::uint8_t> message) {
    const SpongeParams params = SpongeParams::sha3_256();
    const auto digest = squeeze(absorb(message, params), 256, params, SqueezeProfile::RateOnly);
    std::array<std::uint8_t, 32> out;
    std::memcpy(out.data(), digest.data(), 32);
    return out;
}

std::vector<std::uint8_t> shake256_xof(std::span<const std::uint8_t> message, std::size_t n_bits) {
    const SpongeParams params = SpongeParams::shake256();
    return squeeze(absorb(message, params), n_bits, params, SqueezeProfile::RateOnly);
}

std::uint64_t permutation_calls() noexcept { return g_permutation_calls; }

void reset_permutation_calls() noexcept { g_permutation_calls = 0; }

}  // namespace aesha3::keccak
