#include "aesha3/aes.hpp"

#include <stdexcept>

namespace aesha3::aes {

namespace {

constexpr std::uint8_t xtime(std::uint8_t a) {
    return static_cast<std::uint8_t>((a << 1) ^ ((a & 0x80) ? 0x1B : 0x00));
}

constexpr std::uint8_t rotl8(std::uint8_t v, int n) {
    return static_cast<std::uint8_t>((v << n) | (v >> (8 - n)));
}

// Log/exp tables over the generator 0x03, built from the field definition.
struct GfTables {
    std::array<std::uint8_t, 256> log{};
    std::array<std::uint8_t, 512> exp{};
};

constexpr GfTables make_gf_tables() {
    GfTables t{};
    std::uint8_t v = 1;
    for (int i = 0; i < 255; ++i) {
        t.exp[static_cast<std::size_t>(i)] = v;
        t.log[v] = static_cast<std::uint8_t>(i);
        v = static_cast<std::uint8_t>(v ^ xtime(v));  // multiply by 0x03
    }
    for (int i = 255; i < 512; ++i) {
        t.exp[static_cast<std::size_t>(i)] = t.exp[static_cast<std::size_t>(i - 255)];
    }
    return t;
}

constexpr GfTables kGf = make_gf_tables();

constexpr std::uint8_t gf_mul_tbl(std::uint8_t a, std::uint8_t b) {
    if (a == 0 || b == 0) return 0;
    return kGf.exp[static_cast<std::size_t>(kGf.log[a]) + kGf.log[b]];
}

constexpr std::uint8_t gf_inverse(std::uint8_t a) {
    return a == 0 ? 0 : kGf.exp[static_cast<std::size_t>(255 - kGf.log[a])];
}

constexpr std::array<std::uint8_t, 256> make_sbox() {
    std::array<std::uint8_t, 256> s{};
    for (int i = 0; i < 256; ++i) {
        const std::uint8_t b = gf_inverse(static_cast<std::uint8_t>(i));
        s[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(
            b ^ rotl8(b, 1) ^ rotl8(b, 2) ^ rotl8(b, 3) ^ rotl8(b, 4) ^ 0x63);
    }
    return s;
}

constexpr std::array<std::uint8_t, 256> make_inv_sbox(const std::array<std::uint8_t, 256>& s) {
    std::array<std::uint8_t, 256> inv{};
    for (int i = 0; i < 256; ++i) {
        inv[s[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
    }
    return inv;
}

constexpr std::array<std::uint8_t, 256> kSbox = make_sbox();
constexpr std::array<std::uint8_t, 256> kInvSbox = make_inv_sbox(kSbox);

// Known entries of the generated tables.
static_assert(kSbox[0x00] == 0x63);
static_assert(kSbox[0x53] == 0xED);
static_assert(kSbox[0x01] == 0x7C);
static_assert(kInvSbox[0x63] == 0x00);
static_assert(gf_mul_tbl(0x57, 0x83) == 0xC1);

thread_local std::uint64_t g_block_encrypt_calls = 0;

}  // namespace

std::string_view variant_name(Variant v) {
    switch (v) {
        case Variant::A128: return "128";
        case Variant::A192: return "192";
        case Variant::A256: return "256";
    }
    return "?";
}

void RoundKeySchedule::validate() const {
    if (keys.size() != round_key_count(variant)) {
        throw std::invalid_argument("round key schedule has " + std::to_string(keys.size()) +
                                    " keys, expected " + std::to_string(round_key_count(variant)));
    }
}

std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) { return gf_mul_tbl(a, b); }

std::uint8_t sbox(std::uint8_t v) { return kSbox[v]; }

std::uint8_t inv_sbox(std::uint8_t v) { return kInvSbox[v]; }

AesState sub_bytes(AesState s) {
    for (auto& b : s.bytes) b = kSbox[b];
    return s;
}

AesState inv_sub_bytes(AesState s) {
    for (auto& b : s.bytes) b = kInvSbox[b];
    return s;
}

AesState shift_rows(AesState s) {
    AesState out;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            out.at(r, c) = s.at(r, (c + r) % 4);
        }
    }
    return out;
}

AesState inv_shift_rows(AesState s) {
    AesState out;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            out.at(r, (c + r) % 4) = s.at(r, c);
        }
    }
    return out;
}

AesState mix_columns(AesState s) {
    for (int c = 0; c < 4; ++c) {
        const std::uint8_t a0 = s.at(0, c), a1 = s.at(1, c), a2 = s.at(2, c), a3 = s.at(3, c);
        s.at(0, c) = static_cast<std::uint8_t>(xtime(a0) ^ (xtime(a1) ^ a1) ^ a2 ^ a3);
        s.at(1, c) = static_cast<std::uint8_t>(a0 ^ xtime(a1) ^ (xtime(a2) ^ a2) ^ a3);
        s.at(2, c) = static_cast<std::uint8_t>(a0 ^ a1 ^ xtime(a2) ^ (xtime(a3) ^ a3));
        s.at(3, c) = static_cast<std::uint8_t>((xtime(a0) ^ a0) ^ a1 ^ a2 ^ xtime(a3));
    }
    return s;
}

AesState inv_mix_columns(AesState s) {
    for (int c = 0; c < 4; ++c) {
        const std::uint8_t a0 = s.at(0, c), a1 = s.at(1, c), a2 = s.at(2, c), a3 = s.at(3, c);
        s.at(0, c) = static_cast<std::uint8_t>(gf_mul(a0, 0x0E) ^ gf_mul(a1, 0x0B) ^
                                               gf_mul(a2, 0x0D) ^ gf_mul(a3, 0x09));
        s.at(1, c) = static_cast<std::uint8_t>(gf_mul(a0, 0x09) ^ gf_mul(a1, 0x0E) ^
                                               gf_mul(a2, 0x0B) ^ gf_mul(a3, 0x0D));
        s.at(2, c) = static_cast<std::uint8_t>(gf_mul(a0, 0x0D) ^ gf_mul(a1, 0x09) ^
                                               gf_mul(a2, 0x0E) ^ gf_mul(a3, 0x0B));
        s.at(3, c) = static_cast<std::uint8_t>(gf_mul(a0, 0x0B) ^ gf_mul(a1, 0x0D) ^
                                               gf_mul(a2, 0x09) ^ gf_mul(a3, 0x0E));
    }
    return s;
}

AesState add_round_key(AesState s, const RoundKey& k) {
    for (std::size_t i = 0; i < kBlockBytes; ++i) {
        s.bytes[i] ^= k.bytes[i];
    }
    return s;
}

Block encrypt_block(const Block& block, const RoundKeySchedule& sched) {
    sched.validate();
    ++g_block_encrypt_calls;
    const int nr = rounds(sched.variant);

    AesState s = AesState::from_block(block);
    s = add_round_key(s, sched.keys[0]);
    for (int r = 1; r < nr; ++r) {
        s = add_round_key(mix_columns(shift_rows(sub_bytes(s))), sched.keys[static_cast<std::size_t>(r)]);
    }
    s = add_round_key(shift_rows(sub_bytes(s)), sched.keys[static_cast<std::size_t>(nr)]);
    return s.to_block();
}

Block decrypt_block(const Block& block, const RoundKeySchedule& sched) {
    sched.validate();
    const int nr = rounds(sched.variant);

    AesState s = AesState::from_block(block);
    s = add_round_key(s, sched.keys[static_cast<std::size_t>(nr)]);
    for (int r = nr - 1; r >= 1; --r) {
        s = inv_mix_columns(add_round_key(inv_sub_bytes(inv_shift_rows(s)),
                                          sched.keys[static_cast<std::size_t>(r)]));
    }
    s = add_round_key(inv_sub_bytes(inv_shift_rows(s)), sched.keys[0]);
    return s.to_block();
}

std::uint64_t block_encrypt_calls() noexcept { return g_block_encrypt_calls; }

void reset_block_encrypt_calls() noexcept { g_block_encrypt_calls = 0; }

}  // namespace aesha3::aes
