#include "aesha3/analysis.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "aesha3/rng.hpp"

namespace aesha3::analysis {

namespace {

std::vector<std::uint8_t> serialize_schedule(const aes::RoundKeySchedule& sched) {
    std::vector<std::uint8_t> out;
    out.reserve(sched.keys.size() * aes::kBlockBytes);
    for (const auto& k : sched.keys) {
        out.insert(out.end(), k.bytes.begin(), k.bytes.end());
    }
    return out;
}

std::size_t hamming(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    std::size_t bits = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        bits += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(a[i] ^ b[i])));
    }
    return bits;
}

void flip_bit(std::span<std::uint8_t> bytes, std::size_t bit) {
    bytes[bit / 8] ^= static_cast<std::uint8_t>(0x80u >> (bit % 8));
}

}  // namespace

std::size_t BitSample::ones() const {
    std::size_t count = 0;
    const std::size_t full = bit_count / 8;
    for (std::size_t i = 0; i < full; ++i) {
        count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(bytes[i])));
    }
    for (std::size_t i = full * 8; i < bit_count; ++i) {
        count += bit(i);
    }
    return count;
}

BitSample BitSample::from_schedule(const aes::RoundKeySchedule& sched, std::string source) {
    BitSample s;
    s.bytes = serialize_schedule(sched);
    s.bit_count = s.bytes.size() * 8;
    s.source = std::move(source);
    return s;
}

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

TestReport monobit_test(const BitSample& sample) {
    if (sample.bit_count < kMinSampleBits) {
        throw std::invalid_argument("monobit test requires at least 100 bits, got " +
                                    std::to_string(sample.bit_count));
    }
    const double n = static_cast<double>(sample.bit_count);
    const double ones = static_cast<double>(sample.ones());
    const double statistic = std::abs(2.0 * ones - n) / std::sqrt(n);
    const double p = std::erfc(statistic / std::sqrt(2.0));

    TestReport r;
    r.test = "monobit";
    r.source = sample.source;
    r.n = sample.bit_count;
    r.statistic = statistic;
    r.p_value = p;
    r.verdict = p >= kAlpha ? Verdict::Pass : Verdict::Fail;
    return r;
}

TestReport runs_test(const BitSample& sample) {
    if (sample.bit_count < kMinSampleBits) {
        throw std::invalid_argument("runs test requires at least 100 bits, got " +
                                    std::to_string(sample.bit_count));
    }
    const double n = static_cast<double>(sample.bit_count);
    const double pi = static_cast<double>(sample.ones()) / n;

    TestReport r;
    r.test = "runs";
    r.source = sample.source;
    r.n = sample.bit_count;

    // Applicability bound from the frequency precondition.
    const double tau = 2.0 / std::sqrt(n);
    if (std::abs(pi - 0.5) >= tau) {
        r.statistic = 0.0;
        r.p_value = std::nullopt;
        r.verdict = Verdict::NotApplicable;
        return r;
    }

    std::size_t runs = 1;
    for (std::size_t i = 1; i < sample.bit_count; ++i) {
        runs += sample.bit(i) != sample.bit(i - 1);
    }
    const double v = static_cast<double>(runs);
    const double expected = 2.0 * n * pi * (1.0 - pi);
    const double p =
        std::erfc(std::abs(v - expected) / (2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi)));

    r.statistic = v;
    r.p_value = p;
    r.verdict = p >= kAlpha ? Verdict::Pass : Verdict::Fail;
    return r;
}

std::vector<AvalancheRow> avalanche_matrix(keys::DerivationProfile provider, aes::Variant variant,
                                           std::size_t trials, std::uint64_t seed) {
    if (trials < 100) {
        throw std::invalid_argument("avalanche_matrix requires trials >= 100");
    }
    const std::size_t key_bits = aes::key_bytes(variant) * 8;
    const std::size_t sched_bits = keys::subkey_bits_required(variant);

    std::mt19937_64 engine(seed);
    std::vector<AvalancheRow> rows;
    rows.reserve(key_bits);

    for (std::size_t bit = 0; bit < key_bits; ++bit) {
        std::uint64_t sched_flips = 0;
        std::uint64_t whitening_flips = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            keys::MasterKey mk = rng::random_master_key(variant, engine);
            const auto base = serialize_schedule(keys::derive_schedule(mk, provider));
            flip_bit(mk.bytes, bit);
            const auto flipped = serialize_schedule(keys::derive_schedule(mk, provider));
            sched_flips += hamming(base, flipped);
            whitening_flips += hamming(std::span(base.data(), aes::kBlockBytes),
                                       std::span(flipped.data(), aes::kBlockBytes));
        }
        AvalancheRow row;
        row.key_bit = bit;
        row.schedule_flip_rate = static_cast<double>(sched_flips) /
                                 (static_cast<double>(trials) * static_cast<double>(sched_bits));
        row.whitening_flip_rate = static_cast<double>(whitening_flips) /
                                  (static_cast<double>(trials) * 128.0);
        rows.push_back(row);
    }
    return rows;
}

ComparisonReport compare_providers(aes::Variant variant, std::size_t trials, std::uint64_t seed,
                                   keys::DerivationProfile sha3_profile) {
    if (trials < 100) {
        throw std::invalid_argument("compare_providers requires trials >= 100");
    }
    if (sha3_profile == keys::DerivationProfile::StandardAes) {
        throw std::invalid_argument("compare_providers needs a sha3 profile to compare against");
    }

    ComparisonReport report;
    report.variant = variant;
    report.trials = trials;
    report.seed = seed;

    const std::size_t key_bits = aes::key_bytes(variant) * 8;
    const std::size_t sched_bits = keys::subkey_bits_required(variant);
    const keys::DerivationProfile providers[2] = {keys::DerivationProfile::StandardAes,
                                                  sha3_profile};

    for (const auto provider : providers) {
        // Identical master-key stream for both providers.
        std::mt19937_64 engine(seed);
        const std::string label{keys::profile_name(provider)};

        std::size_t monobit_pass = 0;
        std::size_t runs_pass = 0;
        std::size_t runs_applicable = 0;
        double monobit_p_sum = 0.0;
        double runs_p_sum = 0.0;
        std::uint64_t avalanche_flips = 0;
        std::uint64_t whitening_distance = 0;

        for (std::size_t t = 0; t < trials; ++t) {
            keys::MasterKey mk = rng::random_master_key(variant, engine);
            const auto sched = keys::derive_schedule(mk, provider);
            const BitSample sample = BitSample::from_schedule(sched, label);

            const TestReport mono = monobit_test(sample);
            monobit_pass += mono.verdict == Verdict::Pass;
            monobit_p_sum += *mono.p_value;

            const TestReport runs = runs_test(sample);
            if (runs.verdict != Verdict::NotApplicable) {
                ++runs_applicable;
                runs_pass += runs.verdict == Verdict::Pass;
                runs_p_sum += *runs.p_value;
            }

            // Avalanche with one toggled key bit per trial.
            keys::MasterKey mutated = mk;
            flip_bit(mutated.bytes, t % key_bits);
            const auto flipped = serialize_schedule(keys::derive_schedule(mutated, provider));
            avalanche_flips += hamming(sample.bytes, flipped);

            whitening_distance += hamming(std::span(sample.bytes.data(), aes::kBlockBytes),
                                          std::span(mk.bytes.data(), aes::kBlockBytes));
        }

        const auto frac = [trials](std::size_t k) {
            return static_cast<double>(k) / static_cast<double>(trials);
        };

        ComparisonRow mono_row;
        mono_row.test = "monobit";
        mono_row.provider = label;
        mono_row.variant = aes::variant_name(variant);
        mono_row.n = trials;
        mono_row.statistic = frac(monobit_pass);  // pass rate
        mono_row.p_value = monobit_p_sum / static_cast<double>(trials);
        mono_row.verdict = mono_row.statistic >= 0.97 ? Verdict::Pass : Verdict::Fail;
        report.rows.push_back(mono_row);

        ComparisonRow runs_row;
        runs_row.test = "runs";
        runs_row.provider = label;
        runs_row.variant = aes::variant_name(variant);
        runs_row.n = runs_applicable;
        runs_row.statistic =
            runs_applicable == 0 ? 0.0
                                 : static_cast<double>(runs_pass) / static_cast<double>(trials);
        runs_row.p_value = runs_applicable == 0
                               ? std::optional<double>{}
                               : runs_p_sum / static_cast<double>(runs_applicable);
        runs_row.verdict = runs_row.statistic >= 0.97 ? Verdict::Pass : Verdict::Fail;
        report.rows.push_back(runs_row);

        ComparisonRow av_row;
        av_row.test = "avalanche";
        av_row.provider = label;
        av_row.variant = aes::variant_name(variant);
        av_row.n = trials;
        av_row.statistic = static_cast<double>(avalanche_flips) /
                           (static_cast<double>(trials) * static_cast<double>(sched_bits));
        av_row.verdict = av_row.statistic >= 0.45 && av_row.statistic <= 0.55 ? Verdict::Pass
                                                                              : Verdict::Fail;
        report.rows.push_back(av_row);

        ComparisonRow wh_row;
        wh_row.test = "whitening-distance";
        wh_row.provider = label;
        wh_row.variant = aes::variant_name(variant);
        wh_row.n = trials;
        wh_row.statistic =
            static_cast<double>(whitening_distance) / (static_cast<double>(trials) * 128.0);
        wh_row.verdict = Verdict::NotApplicable;  // descriptive contrast, no threshold
        report.rows.push_back(wh_row);
    }
    return report;
}

std::string to_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out << "test,provider,variant,n,statistic,p_value,verdict,seed\n";
    for (const auto& row : report.rows) {
        out << row.test << ',' << row.provider << ',' << row.variant << ',' << row.n << ','
            << std::setprecision(10) << row.statistic << ',';
        if (row.p_value) {
            out << std::setprecision(10) << *row.p_value;
        }
        out << ',' << verdict_name(row.verdict) << ',' << report.seed << '\n';
    }
    return out.str();
}

std::string to_text(const ComparisonReport& report) {
    std::ostringstream out;
    out << "provider comparison: AES-" << aes::variant_name(report.variant) << ", "
        << report.trials << " trials, seed " << report.seed << "\n";
    out << std::left << std::setw(20) << "test" << std::setw(12) << "provider" << std::setw(8)
        << "n" << std::setw(14) << "statistic" << std::setw(14) << "p_value" << "verdict\n";
    for (const auto& row : report.rows) {
        out << std::left << std::setw(20) << row.test << std::setw(12) << row.provider
            << std::setw(8) << row.n << std::setw(14) << std::setprecision(6) << row.statistic;
        if (row.p_value) {
            out << std::setw(14) << std::setprecision(6) << *row.p_value;
        } else {
            out << std::setw(14) << "-";
        }
        out << verdict_name(row.verdict) << '\n';
    }
    return out.str();
}

}  // namespace aesha3::analysis
