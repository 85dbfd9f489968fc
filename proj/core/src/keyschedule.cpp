#include "aesha3/keyschedule.hpp"

#include <fstream>
#include <stdexcept>

#include "aesha3/errors.hpp"
#include "aesha3/hex.hpp"
#include "aesha3/keccak.hpp"

namespace aesha3::keys {

namespace {

constexpr std::array<std::uint8_t, 10> kRcon = {0x01, 0x02, 0x04, 0x08, 0x10,
                                                0x20, 0x40, 0x80, 0x1B, 0x36};

std::uint32_t rot_word(std::uint32_t w) { return (w << 8) | (w >> 24); }

std::uint32_t sub_word(std::uint32_t w) {
    return (static_cast<std::uint32_t>(aes::sbox(static_cast<std::uint8_t>(w >> 24))) << 24) |
           (static_cast<std::uint32_t>(aes::sbox(static_cast<std::uint8_t>(w >> 16))) << 16) |
           (static_cast<std::uint32_t>(aes::sbox(static_cast<std::uint8_t>(w >> 8))) << 8) |
           static_cast<std::uint32_t>(aes::sbox(static_cast<std::uint8_t>(w)));
}

aes::RoundKeySchedule schedule_from_bytes(Variant variant, std::span<const std::uint8_t> stream) {
    aes::RoundKeySchedule sched;
    sched.variant = variant;
    const std::size_t count = aes::round_key_count(variant);
    sched.keys.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::copy_n(stream.begin() + static_cast<std::ptrdiff_t>(16 * k), 16,
                    sched.keys[k].bytes.begin());
    }
    return sched;
}

}  // namespace

MasterKey MasterKey::from_bytes(std::span<const std::uint8_t> raw) {
    Variant v;
    switch (raw.size()) {
        case 16: v = Variant::A128; break;
        case 24: v = Variant::A192; break;
        case 32: v = Variant::A256; break;
        default:
            throw MalformedKeyError("key must be 16, 24 or 32 bytes, got " +
                                    std::to_string(raw.size()));
    }
    return MasterKey{v, {raw.begin(), raw.end()}};
}

void MasterKey::validate() const {
    if (bytes.size() != aes::key_bytes(variant)) {
        throw MalformedKeyError("master key byte count does not match variant");
    }
}

std::string_view profile_name(DerivationProfile p) {
    switch (p) {
        case DerivationProfile::StandardAes: return "standard";
        case DerivationProfile::Sha3FullState: return "sha3-full";
        case DerivationProfile::Sha3Shake: return "sha3-shake";
    }
    return "?";
}

std::optional<DerivationProfile> profile_from_name(std::string_view name) {
    if (name == "standard") return DerivationProfile::StandardAes;
    if (name == "sha3-full") return DerivationProfile::Sha3FullState;
    if (name == "sha3-shake") return DerivationProfile::Sha3Shake;
    return std::nullopt;
}

aes::RoundKeySchedule expand_key_standard(const MasterKey& mk) {
    mk.validate();
    const std::size_t nk = mk.bytes.size() / 4;
    const std::size_t n_words = 4 * aes::round_key_count(mk.variant);

    std::vector<std::uint32_t> w(n_words);
    for (std::size_t i = 0; i < nk; ++i) {
        w[i] = (static_cast<std::uint32_t>(mk.bytes[4 * i]) << 24) |
               (static_cast<std::uint32_t>(mk.bytes[4 * i + 1]) << 16) |
               (static_cast<std::uint32_t>(mk.bytes[4 * i + 2]) << 8) |
               static_cast<std::uint32_t>(mk.bytes[4 * i + 3]);
    }
    for (std::size_t i = nk; i < n_words; ++i) {
        std::uint32_t t = w[i - 1];
        if (i % nk == 0) {
            t = sub_word(rot_word(t)) ^ (static_cast<std::uint32_t>(kRcon[i / nk - 1]) << 24);
        } else if (nk > 6 && i % nk == 4) {
            t = sub_word(t);
        }
        w[i] = w[i - nk] ^ t;
    }

    aes::RoundKeySchedule sched;
    sched.variant = mk.variant;
    sched.keys.resize(aes::round_key_count(mk.variant));
    for (std::size_t k = 0; k < sched.keys.size(); ++k) {
        for (std::size_t c = 0; c < 4; ++c) {
            const std::uint32_t word = w[4 * k + c];
            sched.keys[k].bytes[4 * c + 0] = static_cast<std::uint8_t>(word >> 24);
            sched.keys[k].bytes[4 * c + 1] = static_cast<std::uint8_t>(word >> 16);
            sched.keys[k].bytes[4 * c + 2] = static_cast<std::uint8_t>(word >> 8);
            sched.keys[k].bytes[4 * c + 3] = static_cast<std::uint8_t>(word);
        }
    }
    return sched;
}

aes::RoundKeySchedule derive_subkeys_sha3(const MasterKey& mk, DerivationProfile profile) {
    mk.validate();
    const std::size_t n_bits = subkey_bits_required(mk.variant);

    switch (profile) {
        case DerivationProfile::Sha3FullState: {
            const auto params = keccak::SpongeParams::shake256();
            const auto stream = keccak::squeeze(keccak::absorb(mk.bytes, params), n_bits, params,
                                                keccak::SqueezeProfile::FullState);
            return schedule_from_bytes(mk.variant, stream);
        }
        case DerivationProfile::Sha3Shake: {
            const auto stream = keccak::shake256_xof(mk.bytes, n_bits);
            return schedule_from_bytes(mk.variant, stream);
        }
        case DerivationProfile::StandardAes:
            break;
    }
    throw std::invalid_argument("derive_subkeys_sha3 requires a sha3 profile");
}

aes::RoundKeySchedule derive_schedule(const MasterKey& mk, DerivationProfile profile) {
    if (profile == DerivationProfile::StandardAes) {
        return expand_key_standard(mk);
    }
    return derive_subkeys_sha3(mk, profile);
}

MasterKey parse_key_hex(std::string_view line) {
    if (line.size() != 32 && line.size() != 48 && line.size() != 64) {
        throw MalformedKeyError("key line must be 32, 48 or 64 hex chars, got " +
                                std::to_string(line.size()));
    }
    return MasterKey::from_bytes(hex::decode(line));
}

std::vector<MasterKey> load_key_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open key file: " + path.string());
    }
    std::vector<MasterKey> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            out.push_back(parse_key_hex(line));
        } catch (const MalformedKeyError& e) {
            throw MalformedKeyError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (out.empty()) {
        throw MalformedKeyError("key file contains no keys: " + path.string());
    }
    return out;
}

void write_key_file(const std::filesystem::path& path, const MasterKey& mk) {
    mk.validate();
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot write key file: " + path.string());
    }
    out << hex::encode(mk.bytes) << '\n';
    if (!out) {
        throw IoError("failed writing key file: " + path.string());
    }
}

}  // namespace aesha3::keys
