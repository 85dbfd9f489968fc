#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aesha3/aes.hpp"
#include "aesha3/keyschedule.hpp"

namespace aesha3::bench {

/// Monotonic nanosecond clock. Injectable so timing logic is testable with a
/// synthetic clock; the default reads std::chrono::steady_clock.
using ClockFn = std::function<std::uint64_t()>;

ClockFn steady_clock_ns();
std::uint64_t steady_clock_resolution_ns();

struct BenchConfig {
    std::vector<aes::Variant> variants{aes::Variant::A128, aes::Variant::A192,
                                       aes::Variant::A256};
    std::vector<keys::DerivationProfile> providers{keys::DerivationProfile::StandardAes,
                                                   keys::DerivationProfile::Sha3FullState};
    std::size_t schedule_iterations = 10000;
    std::size_t warmup_iterations = 100;
    std::vector<std::size_t> sweep_sizes = default_sweep_sizes();
    std::size_t sweep_repetitions = 3;
    std::uint64_t seed = 1;
    ClockFn clock;  // empty -> steady_clock_ns()

    /// 1 KB doubling to 16 MB (15 sizes).
    static std::vector<std::size_t> default_sweep_sizes();

    /// Throws std::invalid_argument on iterations < 1, repetitions < 1,
    /// empty variant/provider sets, or sizes not strictly increasing.
    void validate() const;
};

struct RunMetadata {
    std::uint64_t seed = 0;
    std::uint64_t clock_resolution_ns = 0;
    std::size_t repetitions = 0;
    std::size_t warmup = 0;
    std::string host;
};

struct ScheduleTiming {
    keys::DerivationProfile provider = keys::DerivationProfile::StandardAes;
    aes::Variant variant = aes::Variant::A128;
    std::size_t iterations = 0;
    double mean_ms = 0.0;
    double median_ms = 0.0;
    double stddev_ms = 0.0;
};

struct KeyScheduleReport {
    std::vector<ScheduleTiming> rows;
    RunMetadata meta;
};

struct BenchRecord {
    std::size_t payload_bytes = 0;
    keys::DerivationProfile provider = keys::DerivationProfile::StandardAes;
    aes::Variant variant = aes::Variant::A128;
    double total_time_ms = 0.0;      // best of the repetitions (noise is additive)
    double efficiency_ratio = 0.0;   // time_standard / time_this, matched payload
    double rel_spread = 0.0;         // (max - min) / min over repetitions
    std::string error;               // one failed row does not abort the sweep

    bool operator==(const BenchRecord&) const = default;
};

struct SweepReport {
    std::vector<BenchRecord> records;
    RunMetadata meta;
};

/// Schedule-derivation latency: per (provider, variant), a fresh random
/// master key every iteration, derivation alone inside the timed window,
/// mean/median/stddev over `schedule_iterations` after warmup. Both
/// providers see the same seeded key stream.
KeyScheduleReport bench_key_schedule(const BenchConfig& cfg);

/// Encryption sweep: per (size, variant) one random payload and master key,
/// then per provider the total time of schedule derivation plus full ECB
/// encryption. Repetitions are interleaved across providers and the best
/// time is kept. Requires the StandardAes provider in the set, as it is the
/// efficiency-ratio baseline.
SweepReport bench_encrypt_sweep(const BenchConfig& cfg);

/// The efficiency figure: baseline time over candidate time.
double efficiency_ratio(double standard_ms, double candidate_ms);

enum class TableFormat { Markdown, Csv };

/// Markdown: one row per size, one "Total Time" column per provider/variant
/// (File Size + 2x3 columns under the default config). Csv: full records,
/// including efficiency ratios, preceded by "# key=value" metadata lines.
/// Rejects empty record sets.
std::string emit_table(const SweepReport& report, TableFormat format);
std::string emit_table(const KeyScheduleReport& report, TableFormat format);

/// Plot-data CSV backing ratio-vs-size figures: one row per size per variant
/// per non-baseline provider.
std::string emit_plot_data(const SweepReport& report);

/// Parses emit_table(..., Csv) output back into records and metadata.
SweepReport parse_sweep_csv(std::string_view csv);

enum class TrendVerdict { Pass, Fail, Inconclusive };

struct TrendResult {
    TrendVerdict verdict = TrendVerdict::Pass;
    std::string detail;
};

/// Checks each non-baseline provider/variant ratio sequence over increasing
/// sizes: non-increasing within `tolerance` per doubling step and never
/// below 1 - tolerance. A violation on a noisy record (rel_spread above the
/// tolerance) downgrades to Inconclusive instead of Fail. Requires at least
/// 4 sizes.
TrendResult trend_check(const SweepReport& report, double tolerance = 0.05);

}  // namespace aesha3::bench
