#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aesha3/aes.hpp"
#include "aesha3/keyschedule.hpp"

namespace aesha3::analysis {

/// A bit string under test, e.g. a serialized schedule. Bit i is read
/// MSB-first within bytes, matching the schedule slicing convention.
struct BitSample {
    std::vector<std::uint8_t> bytes;
    std::size_t bit_count = 0;
    std::string source;  // provider label

    bool bit(std::size_t i) const { return (bytes[i / 8] >> (7 - i % 8)) & 1; }
    std::size_t ones() const;

    static BitSample from_schedule(const aes::RoundKeySchedule& sched, std::string source);
};

enum class Verdict { Pass, Fail, NotApplicable };

std::string_view verdict_name(Verdict v);

struct TestReport {
    std::string test;
    std::string source;
    std::size_t n = 0;           // bits examined
    double statistic = 0.0;
    std::optional<double> p_value;  // absent when not applicable
    Verdict verdict = Verdict::Fail;
};

inline constexpr double kAlpha = 0.01;
inline constexpr std::size_t kMinSampleBits = 100;

/// Frequency test: statistic |#ones - #zeros| / sqrt(n),
/// p = erfc(statistic / sqrt(2)); pass iff p >= 0.01.
/// Throws std::invalid_argument for samples under 100 bits.
TestReport monobit_test(const BitSample& sample);

/// Runs test conditioned on the ones-proportion being within 2/sqrt(n) of
/// one half; outside that bound the verdict is NotApplicable (not a failure).
TestReport runs_test(const BitSample& sample);

/// Per-input-bit avalanche: for each master-key bit, the mean fraction of
/// schedule bits (and of whitening-key bits) that flip when that bit is
/// toggled, over `trials` random keys per bit. trials >= 100.
struct AvalancheRow {
    std::size_t key_bit = 0;
    double schedule_flip_rate = 0.0;
    double whitening_flip_rate = 0.0;  // round key 0 region only
};

std::vector<AvalancheRow> avalanche_matrix(keys::DerivationProfile provider, aes::Variant variant,
                                           std::size_t trials, std::uint64_t seed);

/// Side-by-side provider comparison: monobit and runs pass rates, avalanche
/// means and whitening-key distance for both providers over the same
/// seeded master-key stream. trials >= 100.
struct ComparisonRow {
    std::string test;
    std::string provider;
    std::string variant;
    std::size_t n = 0;
    double statistic = 0.0;
    std::optional<double> p_value;
    Verdict verdict = Verdict::Pass;
};

struct ComparisonReport {
    aes::Variant variant = aes::Variant::A128;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<ComparisonRow> rows;
};

ComparisonReport compare_providers(aes::Variant variant, std::size_t trials, std::uint64_t seed,
                                   keys::DerivationProfile sha3_profile =
                                       keys::DerivationProfile::Sha3FullState);

/// CSV with columns test,provider,variant,n,statistic,p_value,verdict,seed.
std::string to_csv(const ComparisonReport& report);
/// Aligned human-readable rendering of the same rows.
std::string to_text(const ComparisonReport& report);

}  // namespace aesha3::analysis
