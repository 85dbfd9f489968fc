#include "aesha3/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "aesha3/modes.hpp"
#include "aesha3/rng.hpp"

#if defined(__unix__)
#include <sys/utsname.h>
#endif

namespace aesha3::bench {

namespace {

volatile std::uint8_t g_sink;  // keeps timed work observable

std::string host_string() {
#if defined(__unix__)
    utsname u{};
    if (uname(&u) == 0) {
        return std::string(u.nodename) + " (" + u.sysname + " " + u.machine + ")";
    }
#endif
    return "unknown";
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string human_size(std::size_t bytes) {
    if (bytes >= (1u << 20) && bytes % (1u << 20) == 0) {
        return std::to_string(bytes >> 20) + " MB";
    }
    if (bytes >= 1024 && bytes % 1024 == 0) {
        return std::to_string(bytes >> 10) + " KB";
    }
    return std::to_string(bytes) + " B";
}

std::string column_label(keys::DerivationProfile p, aes::Variant v) {
    const std::string suffix{aes::variant_name(v)};
    switch (p) {
        case keys::DerivationProfile::StandardAes: return "AES-" + suffix;
        case keys::DerivationProfile::Sha3FullState: return "AESHA3-" + suffix;
        case keys::DerivationProfile::Sha3Shake: return "AESHA3/shake-" + suffix;
    }
    return "?-" + suffix;
}

RunMetadata make_metadata(const BenchConfig& cfg, std::size_t repetitions) {
    RunMetadata meta;
    meta.seed = cfg.seed;
    meta.clock_resolution_ns = steady_clock_resolution_ns();
    meta.repetitions = repetitions;
    meta.warmup = cfg.warmup_iterations;
    meta.host = host_string();
    return meta;
}

aes::Variant variant_from_name(std::string_view name) {
    if (name == "128") return aes::Variant::A128;
    if (name == "192") return aes::Variant::A192;
    if (name == "256") return aes::Variant::A256;
    throw std::invalid_argument("unknown variant " + std::string(name));
}

}  // namespace

ClockFn steady_clock_ns() {
    return [] {
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(
                std::chrono::steady_clock::now().time_since_epoch())
                .count());
    };
}

std::uint64_t steady_clock_resolution_ns() {
    using period = std::chrono::steady_clock::period;
    const double ns = 1e9 * static_cast<double>(period::num) / static_cast<double>(period::den);
    return ns < 1.0 ? 1 : static_cast<std::uint64_t>(ns);
}

std::vector<std::size_t> BenchConfig::default_sweep_sizes() {
    std::vector<std::size_t> sizes;
    for (std::size_t s = 1024; s <= 16u * 1024 * 1024; s *= 2) {
        sizes.push_back(s);
    }
    return sizes;
}

void BenchConfig::validate() const {
    if (schedule_iterations < 1) {
        throw std::invalid_argument("schedule_iterations must be >= 1");
    }
    if (sweep_repetitions < 1) {
        throw std::invalid_argument("sweep_repetitions must be >= 1");
    }
    if (variants.empty() || providers.empty()) {
        throw std::invalid_argument("variants and providers must be non-empty");
    }
    for (std::size_t i = 0; i + 1 < sweep_sizes.size(); ++i) {
        if (sweep_sizes[i] >= sweep_sizes[i + 1]) {
            throw std::invalid_argument("sweep sizes must be strictly increasing");
        }
    }
    for (const std::size_t s : sweep_sizes) {
        if (s == 0) throw std::invalid_argument("sweep sizes must be positive");
    }
}

KeyScheduleReport bench_key_schedule(const BenchConfig& cfg) {
    cfg.validate();
    const ClockFn clock = cfg.clock ? cfg.clock : steady_clock_ns();

    KeyScheduleReport report;
    report.meta = make_metadata(cfg, 1);

    for (std::size_t vi = 0; vi < cfg.variants.size(); ++vi) {
        const aes::Variant variant = cfg.variants[vi];
        for (const auto provider : cfg.providers) {
            // Re-seeding per provider gives every provider the same key
            // stream for this variant.
            std::mt19937_64 engine(cfg.seed + 1000003 * vi);

            for (std::size_t w = 0; w < cfg.warmup_iterations; ++w) {
                const auto mk = rng::random_master_key(variant, engine);
                g_sink = g_sink ^ keys::derive_schedule(mk, provider).keys[0].bytes[0];
            }

            std::vector<double> ms(cfg.schedule_iterations);
            for (std::size_t i = 0; i < cfg.schedule_iterations; ++i) {
                const auto mk = rng::random_master_key(variant, engine);
                const std::uint64_t t0 = clock();
                const auto sched = keys::derive_schedule(mk, provider);
                const std::uint64_t t1 = clock();
                g_sink = g_sink ^ sched.keys[0].bytes[0];
                ms[i] = static_cast<double>(t1 - t0) / 1e6;
            }

            ScheduleTiming row;
            row.provider = provider;
            row.variant = variant;
            row.iterations = cfg.schedule_iterations;
            double sum = 0.0;
            for (const double d : ms) sum += d;
            row.mean_ms = sum / static_cast<double>(ms.size());
            row.median_ms = median_of(ms);
            double var = 0.0;
            for (const double d : ms) var += (d - row.mean_ms) * (d - row.mean_ms);
            row.stddev_ms = std::sqrt(var / static_cast<double>(ms.size()));
            report.rows.push_back(row);
        }
    }
    return report;
}

SweepReport bench_encrypt_sweep(const BenchConfig& cfg) {
    cfg.validate();
    if (cfg.sweep_sizes.empty()) {
        throw std::invalid_argument("sweep requires at least one payload size");
    }
    if (std::find(cfg.providers.begin(), cfg.providers.end(),
                  keys::DerivationProfile::StandardAes) == cfg.providers.end()) {
        throw std::invalid_argument("sweep requires the standard provider as ratio baseline");
    }
    const ClockFn clock = cfg.clock ? cfg.clock : steady_clock_ns();

    SweepReport report;
    report.meta = make_metadata(cfg, cfg.sweep_repetitions);

    std::mt19937_64 engine(cfg.seed);
    for (const std::size_t size : cfg.sweep_sizes) {
        for (const aes::Variant variant : cfg.variants) {
            std::vector<BenchRecord> row_records;
            double standard_ms = 0.0;
            try {
                std::vector<std::uint8_t> payload(size);
                rng::fill_random(payload, engine);
                const auto mk = rng::random_master_key(variant, engine);

                // one untimed pass per provider, then repetitions interleaved
                // across providers so clock drift lands on both sides alike
                for (const auto provider : cfg.providers) {
                    const auto sched = keys::derive_schedule(mk, provider);
                    const auto ct = modes::ecb_encrypt(payload, sched);
                    g_sink = g_sink ^ ct[0];
                }
                std::vector<std::vector<double>> ms(
                    cfg.providers.size(), std::vector<double>(cfg.sweep_repetitions));
                for (std::size_t r = 0; r < cfg.sweep_repetitions; ++r) {
                    for (std::size_t p = 0; p < cfg.providers.size(); ++p) {
                        const std::uint64_t t0 = clock();
                        const auto sched = keys::derive_schedule(mk, cfg.providers[p]);
                        const auto ct = modes::ecb_encrypt(payload, sched);
                        const std::uint64_t t1 = clock();
                        g_sink = g_sink ^ ct[0];
                        ms[p][r] = static_cast<double>(t1 - t0) / 1e6;
                    }
                }
                for (std::size_t p = 0; p < cfg.providers.size(); ++p) {
                    BenchRecord rec;
                    rec.payload_bytes = size;
                    rec.provider = cfg.providers[p];
                    rec.variant = variant;
                    // Scheduler noise only ever adds time, so the minimum is
                    // the cleanest estimate of the true cost.
                    const auto [lo, hi] = std::minmax_element(ms[p].begin(), ms[p].end());
                    rec.total_time_ms = *lo;
                    rec.rel_spread = rec.total_time_ms > 0.0 ? (*hi - *lo) / rec.total_time_ms : 0.0;
                    if (rec.provider == keys::DerivationProfile::StandardAes) {
                        standard_ms = rec.total_time_ms;
                    }
                    row_records.push_back(rec);
                }
                for (auto& rec : row_records) {
                    rec.efficiency_ratio = efficiency_ratio(standard_ms, rec.total_time_ms);
                }
            } catch (const std::exception& e) {
                row_records.clear();
                for (const auto provider : cfg.providers) {
                    BenchRecord rec;
                    rec.payload_bytes = size;
                    rec.provider = provider;
                    rec.variant = variant;
                    rec.error = e.what();
                    row_records.push_back(rec);
                }
            }
            report.records.insert(report.records.end(), row_records.begin(), row_records.end());
        }
    }
    return report;
}

double efficiency_ratio(double standard_ms, double candidate_ms) {
    if (candidate_ms <= 0.0) {
        throw std::invalid_argument("efficiency ratio requires a positive candidate time");
    }
    return standard_ms / candidate_ms;
}

std::string emit_table(const SweepReport& report, TableFormat format) {
    if (report.records.empty()) {
        throw std::invalid_argument("cannot emit a table from an empty record set");
    }

    std::ostringstream out;
    if (format == TableFormat::Csv) {
        out << "# seed=" << report.meta.seed << "\n# clock_resolution_ns="
            << report.meta.clock_resolution_ns << "\n# repetitions=" << report.meta.repetitions
            << "\n# warmup=" << report.meta.warmup << "\n# host=" << report.meta.host << '\n';
        out << "payload_bytes,provider,variant,total_time_ms,efficiency_ratio,rel_spread,error\n";
        out << std::setprecision(17);
        for (const auto& r : report.records) {
            std::string error = r.error;  // keep the row parseable
            std::replace(error.begin(), error.end(), ',', ';');
            std::replace(error.begin(), error.end(), '\n', ' ');
            out << r.payload_bytes << ',' << keys::profile_name(r.provider) << ','
                << aes::variant_name(r.variant) << ',' << r.total_time_ms << ','
                << r.efficiency_ratio << ',' << r.rel_spread << ',' << error << '\n';
        }
        return out.str();
    }

    // Markdown: File Size column plus one Total Time column per
    // (variant, provider) pair, sizes down the rows.
    std::vector<std::size_t> sizes;
    std::vector<std::pair<aes::Variant, keys::DerivationProfile>> columns;
    for (const auto& r : report.records) {
        if (sizes.empty() || sizes.back() != r.payload_bytes) {
            if (std::find(sizes.begin(), sizes.end(), r.payload_bytes) == sizes.end()) {
                sizes.push_back(r.payload_bytes);
            }
        }
        const auto col = std::make_pair(r.variant, r.provider);
        if (std::find(columns.begin(), columns.end(), col) == columns.end()) {
            columns.push_back(col);
        }
    }

    out << "| File Size |";
    for (const auto& [variant, provider] : columns) {
        out << " Total Time " << column_label(provider, variant) << " (ms) |";
    }
    out << "\n|---|";
    for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
    out << '\n';
    out << std::fixed << std::setprecision(3);
    for (const std::size_t size : sizes) {
        out << "| " << human_size(size) << " |";
        for (const auto& [variant, provider] : columns) {
            const auto it = std::find_if(report.records.begin(), report.records.end(),
                                         [&](const BenchRecord& r) {
                                             return r.payload_bytes == size &&
                                                    r.variant == variant && r.provider == provider;
                                         });
            if (it == report.records.end()) {
                out << " - |";
            } else if (!it->error.empty()) {
                out << " error |";
            } else {
                out << ' ' << it->total_time_ms << " |";
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string emit_table(const KeyScheduleReport& report, TableFormat format) {
    if (report.rows.empty()) {
        throw std::invalid_argument("cannot emit a table from an empty record set");
    }
    std::ostringstream out;
    if (format == TableFormat::Csv) {
        out << "# seed=" << report.meta.seed << "\n# clock_resolution_ns="
            << report.meta.clock_resolution_ns << "\n# warmup=" << report.meta.warmup
            << "\n# host=" << report.meta.host << '\n';
        out << "provider,variant,iterations,mean_ms,median_ms,stddev_ms\n";
        out << std::setprecision(17);
        for (const auto& r : report.rows) {
            out << keys::profile_name(r.provider) << ',' << aes::variant_name(r.variant) << ','
                << r.iterations << ',' << r.mean_ms << ',' << r.median_ms << ',' << r.stddev_ms
                << '\n';
        }
        return out.str();
    }

    // Wide single-row layout, mean latency per provider/variant column.
    out << "| Host |";
    for (const auto& r : report.rows) {
        out << ' ' << column_label(r.provider, r.variant) << " (ms) |";
    }
    out << "\n|---|";
    for (std::size_t i = 0; i < report.rows.size(); ++i) out << "---|";
    out << "\n| " << report.meta.host << " |";
    out << std::fixed << std::setprecision(6);
    for (const auto& r : report.rows) {
        out << ' ' << r.mean_ms << " |";
    }
    out << '\n';

    out << "\n| Provider | Variant | Mean (ms) | Median (ms) | Stddev (ms) |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto& r : report.rows) {
        out << "| " << keys::profile_name(r.provider) << " | " << aes::variant_name(r.variant)
            << " | " << r.mean_ms << " | " << r.median_ms << " | " << r.stddev_ms << " |\n";
    }
    return out.str();
}

std::string emit_plot_data(const SweepReport& report) {
    if (report.records.empty()) {
        throw std::invalid_argument("cannot emit plot data from an empty record set");
    }
    std::ostringstream out;
    out << "payload_bytes,variant,provider,efficiency_ratio\n";
    out << std::setprecision(17);
    for (const auto& r : report.records) {
        if (r.provider == keys::DerivationProfile::StandardAes || !r.error.empty()) continue;
        out << r.payload_bytes << ',' << aes::variant_name(r.variant) << ','
            << keys::profile_name(r.provider) << ',' << r.efficiency_ratio << '\n';
    }
    return out.str();
}

SweepReport parse_sweep_csv(std::string_view csv) {
    SweepReport report;
    std::istringstream in{std::string(csv)};
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = line.substr(2, eq - 2);
            const std::string value = line.substr(eq + 1);
            if (key == "seed") report.meta.seed = std::stoull(value);
            else if (key == "clock_resolution_ns") report.meta.clock_resolution_ns = std::stoull(value);
            else if (key == "repetitions") report.meta.repetitions = std::stoull(value);
            else if (key == "warmup") report.meta.warmup = std::stoull(value);
            else if (key == "host") report.meta.host = value;
            continue;
        }
        if (!header_seen) {  // column header line
            header_seen = true;
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 7) {
            throw std::invalid_argument("malformed sweep csv row: " + line);
        }
        BenchRecord rec;
        rec.payload_bytes = std::stoull(fields[0]);
        const auto provider = keys::profile_from_name(fields[1]);
        if (!provider) {
            throw std::invalid_argument("unknown provider in csv: " + fields[1]);
        }
        rec.provider = *provider;
        rec.variant = variant_from_name(fields[2]);
        rec.total_time_ms = std::stod(fields[3]);
        rec.efficiency_ratio = std::stod(fields[4]);
        rec.rel_spread = std::stod(fields[5]);
        rec.error = fields[6];
        report.records.push_back(rec);
    }
    return report;
}

TrendResult trend_check(const SweepReport& report, double tolerance) {
    // Group ratio sequences per (variant, non-baseline provider).
    struct Point {
        std::size_t size;
        double ratio;
        double spread;
    };
    struct Key {
        aes::Variant variant;
        keys::DerivationProfile provider;
        bool operator==(const Key&) const = default;
    };
    std::vector<std::pair<Key, std::vector<Point>>> groups;
    for (const auto& r : report.records) {
        if (r.provider == keys::DerivationProfile::StandardAes || !r.error.empty()) continue;
        const Key key{r.variant, r.provider};
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == key; });
        if (it == groups.end()) {
            groups.push_back({key, {}});
            it = groups.end() - 1;
        }
        it->second.push_back({r.payload_bytes, r.efficiency_ratio, r.rel_spread});
    }
    if (groups.empty()) {
        throw std::invalid_argument("trend check needs non-baseline provider records");
    }

    TrendResult result;
    std::ostringstream detail;
    for (auto& [key, points] : groups) {
        std::sort(points.begin(), points.end(),
                  [](const Point& a, const Point& b) { return a.size < b.size; });
        if (points.size() < 4) {
            throw std::invalid_argument("trend check requires at least 4 sizes");
        }
        const std::string label = column_label(key.provider, key.variant);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const bool noisy = points[i].spread > tolerance ||
                               (i > 0 && points[i - 1].spread > tolerance);
            if (points[i].ratio < 1.0 - tolerance) {
                detail << label << ": ratio " << points[i].ratio << " at "
                       << human_size(points[i].size) << " below " << 1.0 - tolerance << "; ";
                result.verdict = noisy && result.verdict != TrendVerdict::Fail
                                     ? TrendVerdict::Inconclusive
                                     : TrendVerdict::Fail;
            }
            if (i > 0 && points[i].ratio > points[i - 1].ratio * (1.0 + tolerance)) {
                detail << label << ": ratio rises " << points[i - 1].ratio << " -> "
                       << points[i].ratio << " at " << human_size(points[i].size) << "; ";
                result.verdict = noisy && result.verdict != TrendVerdict::Fail
                                     ? TrendVerdict::Inconclusive
                                     : TrendVerdict::Fail;
            }
        }
    }
    result.detail = detail.str();
    if (result.detail.empty()) {
        result.detail = "ratios non-increasing within tolerance and >= " +
                        std::to_string(1.0 - tolerance) + " at every size";
    }
    return result;
}

}  // namespace aesha3::bench
