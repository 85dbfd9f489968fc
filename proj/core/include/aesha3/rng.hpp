#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "aesha3/keyschedule.hpp"

namespace aesha3::rng {

/// Splits mt19937_64 output into bytes, little-end first. Using the raw
/// engine stream keeps byte sequences identical across standard libraries.
inline void fill_random(std::span<std::uint8_t> out, std::mt19937_64& engine) {
    std::size_t i = 0;
    while (i < out.size()) {
        std::uint64_t v = engine();
        for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
            out[i] = static_cast<std::uint8_t>(v);
            v >>= 8;
        }
    }
}

inline keys::MasterKey random_master_key(aes::Variant variant, std::mt19937_64& engine) {
    keys::MasterKey mk;
    mk.variant = variant;
    mk.bytes.resize(aes::key_bytes(variant));
    fill_random(mk.bytes, engine);
    return mk;
}

}  // namespace aesha3::rng
