// Acceptance suite: one check per release criterion, one pass/fail line each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aesha3/aes.hpp"
#include "aesha3/analysis.hpp"
#include "aesha3/bench.hpp"
#include "aesha3/hex.hpp"
#include "aesha3/keccak.hpp"
#include "aesha3/keyschedule.hpp"
#include "aesha3/modes.hpp"
#include "aesha3/rng.hpp"

using namespace aesha3;
namespace fs = std::filesystem;

namespace {

std::string hexstr(std::span<const std::uint8_t> bytes) { return hex::encode(bytes); }

std::vector<std::uint8_t> random_bytes(std::size_t n, std::mt19937_64& engine) {
    std::vector<std::uint8_t> out(n);
    rng::fill_random(out, engine);
    return out;
}

const aes::Variant kVariants[3] = {aes::Variant::A128, aes::Variant::A192, aes::Variant::A256};
const keys::DerivationProfile kAllProviders[3] = {keys::DerivationProfile::StandardAes,
                                                  keys::DerivationProfile::Sha3FullState,
                                                  keys::DerivationProfile::Sha3Shake};

struct Failure {
    std::string message;
};

using CheckFn = std::function<std::vector<std::string>()>;

// ---------------------------------------------------------------------------
// 1. Baseline AES conformance (bit-exact reference vectors)
std::vector<std::string> check_aes_conformance() {
    std::vector<std::string> problems;
    const auto plain = hex::decode("00112233445566778899aabbccddeeff");
    aes::Block block;
    std::copy(plain.begin(), plain.end(), block.begin());

    const struct {
        const char* key;
        const char* expected;
    } cases[] = {
        {"000102030405060708090a0b0c0d0e0f", "69c4e0d86a7b0430d8cdb78070b4c55a"},
        {"000102030405060708090a0b0c0d0e0f1011121314151617",
         "dda97ca4864cdfe06eaf70a0ec0d7191"},
        {"000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f",
         "8ea2b7ca516745bfeafc49904b496089"},
    };
    for (const auto& c : cases) {
        const auto sched = keys::expand_key_standard(keys::parse_key_hex(c.key));
        const auto ct = aes::encrypt_block(block, sched);
        if (hexstr(ct) != c.expected) {
            problems.push_back(std::string("ciphertext mismatch for key ") + c.key + ": got " +
                               hexstr(ct));
        }
        const auto back = aes::decrypt_block(ct, sched);
        if (!std::equal(back.begin(), back.end(), plain.begin())) {
            problems.push_back(std::string("decrypt failed to invert for key ") + c.key);
        }
    }
    return problems;
}

// ---------------------------------------------------------------------------
// 2. Sponge conformance (SHA3-256 and SHAKE256 reference vectors)
std::vector<std::string> check_sponge_conformance() {
    std::vector<std::string> problems;
    const auto check_digest = [&](std::span<const std::uint8_t> message, const char* expected,
                                  const char* label) {
        const auto digest = keccak::sha3_256(message);
        if (hexstr(digest) != expected) {
            problems.push_back(std::string("sha3-256 mismatch for ") + label + ": got " +
                               hexstr(digest));
        }
    };
    check_digest({}, "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a",
                 "empty");
    const std::string abc = "abc";
    check_digest(std::span(reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size()),
                 "3a985da74fe225b2045c172d6bd390bd855f086e3e9d525b46bfe24511431532", "abc");
    const std::vector<std::uint8_t> million(1'000'000, 'a');
    check_digest(million, "5c8875ae474a3634ba4fd55ec85bffd661f32aca75c6d699d0cdcb6c115891c1",
                 "million-a");

    const auto shake = keccak::shake256_xof({}, 256);
    if (hexstr(shake) != "46b9dd2b0ba88d13233b3feb743eeb243fcd52ea62b81b82b50c27646ed5762f") {
        problems.push_back("shake256 empty-message prefix mismatch: got " + hexstr(shake));
    }
    return problems;
}

// ---------------------------------------------------------------------------
// 3. Schedule geometry: 1408/1664/1920 bits, 11/13/15 keys, every provider
std::vector<std::string> check_schedule_geometry() {
    std::vector<std::string> problems;
    const std::size_t expected_bits[3] = {1408, 1664, 1920};
    const std::size_t expected_keys[3] = {11, 13, 15};
    std::mt19937_64 engine(330);
    for (int v = 0; v < 3; ++v) {
        if (keys::subkey_bits_required(kVariants[v]) != expected_bits[v]) {
            problems.push_back("subkey_bits_required mismatch for variant index " +
                               std::to_string(v));
        }
        for (const auto provider : kAllProviders) {
            for (int trial = 0; trial < 50; ++trial) {
                const auto mk = rng::random_master_key(kVariants[v], engine);
                const auto sched = keys::derive_schedule(mk, provider);
                if (sched.keys.size() != expected_keys[v] ||
                    sched.total_bits() != expected_bits[v]) {
                    problems.push_back("schedule shape violation: provider " +
                                       std::string(keys::profile_name(provider)) + ", variant " +
                                       std::string(aes::variant_name(kVariants[v])));
                }
            }
        }
    }
    return problems;
}

// ---------------------------------------------------------------------------
// 4. Round trip: 1000 random (key, payload <= 4 KB) per variant per provider
std::vector<std::string> check_round_trip() {
    std::vector<std::string> problems;
    std::mt19937_64 engine(440);
    for (const auto variant : kVariants) {
        for (const auto provider : kAllProviders) {
            std::size_t failures = 0;
            for (int trial = 0; trial < 1000; ++trial) {
                const auto mk = rng::random_master_key(variant, engine);
                const auto sched = keys::derive_schedule(mk, provider);
                const auto payload = random_bytes(engine() % 4097, engine);
                if (modes::ecb_decrypt(modes::ecb_encrypt(payload, sched), sched) != payload) {
                    ++failures;
                }
            }
            if (failures != 0) {
                problems.push_back(std::to_string(failures) + " round-trip failures: " +
                                   std::string(keys::profile_name(provider)) + "/" +
                                   std::string(aes::variant_name(variant)));
            }
        }
    }
    return problems;
}

// ---------------------------------------------------------------------------
// 5. Efficiency-ratio arithmetic against the reference table
struct RefRow {
    double standard_ms;
    double candidate_ms;
    double printed_ratio;
    bool printed_value_consistent;  // one reference cell contradicts its own time columns
};

std::vector<std::string> check_ratio_arithmetic() {
    std::vector<std::string> problems;
    // (total time baseline, total time candidate, printed ratio) per variant
    const std::vector<RefRow> table = {
        // 128-bit column
        {1347.24, 15.68, 85.92, true}, {1355.44, 23.69, 57.21, true},
        {1373.93, 42.29, 32.49, true}, {1413.34, 81.60, 17.32, true},
        {1473.12, 141.49, 10.41, true}, {1604.57, 272.77, 5.88, true},
        {1881.59, 550.00, 3.42, true}, {2402.95, 1071.30, 2.24, true},
        {3388.58, 2056.83, 1.65, true}, {5461.41, 4129.83, 1.32, true},
        {9649.51, 8317.80, 1.16, true}, {17779.87, 16448.04, 1.08, true},
        {35315.09, 33984.14, 1.04, true}, {67805.52, 66472.24, 1.02, true},
        {134256.81, 132920.93, 1.01, true},
        // 192-bit column; the 128 KB cell prints 2.43 but its own columns
        // divide to 2.1123, so correct arithmetic is asserted instead
        {1417.22, 19.38, 73.12, true}, {1424.68, 26.26, 54.25, true},
        {1448.18, 49.99, 28.97, true}, {1491.14, 92.22, 16.17, true},
        {1566.51, 168.31, 9.31, true}, {1729.70, 330.97, 5.22, true},
        {2044.98, 646.93, 3.16, true}, {2656.92, 1257.83, 2.1123, false},
        {3892.48, 2493.95, 1.56, true}, {6398.85, 4999.23, 1.28, true},
        {12831.64, 11432.31, 1.12, true}, {22338.69, 20939.92, 1.06, true},
        {40327.12, 38924.27, 1.03, true}, {80735.64, 79330.45, 1.02, true},
        {160978.36, 159569.76, 1.01, true},
        // 256-bit column
        {1464.15, 22.70, 64.5, true}, {1476.69, 34.88, 42.33, true},
        {1509.12, 68.89, 21.91, true}, {1548.31, 106.64, 14.52, true},
        {1665.26, 222.89, 7.47, true}, {1861.00, 418.86, 4.44, true},
        {2225.71, 783.58, 2.84, true}, {2903.74, 1462.38, 1.98, true},
        {4358.85, 2917.59, 1.49, true}, {7278.61, 5836.77, 1.25, true},
        {13094.25, 11653.24, 1.12, true}, {24701.81, 23259.94, 1.062, true},
        {57461.65, 56015.52, 1.025, true}, {114207.08, 112728.99, 1.013, true},
        {219933.49, 218440.19, 1.006, true},
    };

    // Route the times through the real record/emission/parse path.
    bench::SweepReport report;
    report.meta.seed = 0;
    std::size_t size = 1024;
    for (const auto& row : table) {
        bench::BenchRecord standard;
        standard.payload_bytes = size;
        standard.provider = keys::DerivationProfile::StandardAes;
        standard.total_time_ms = row.standard_ms;
        standard.efficiency_ratio = 1.0;
        bench::BenchRecord candidate = standard;
        candidate.provider = keys::DerivationProfile::Sha3FullState;
        candidate.total_time_ms = row.candidate_ms;
        candidate.efficiency_ratio =
            bench::efficiency_ratio(row.standard_ms, row.candidate_ms);
        report.records.push_back(standard);
        report.records.push_back(candidate);
        size *= 2;
    }
    const auto parsed = bench::parse_sweep_csv(bench::emit_table(report, bench::TableFormat::Csv));

    std::size_t row_index = 0;
    std::size_t inconsistent_cells = 0;
    for (const auto& rec : parsed.records) {
        if (rec.provider == keys::DerivationProfile::StandardAes) continue;
        const auto& ref = table[row_index++];
        if (!ref.printed_value_consistent) ++inconsistent_cells;
        if (std::abs(rec.efficiency_ratio - ref.printed_ratio) > 0.01) {
            problems.push_back("ratio mismatch: " + std::to_string(ref.standard_ms) + "/" +
                               std::to_string(ref.candidate_ms) + " -> " +
                               std::to_string(rec.efficiency_ratio) + ", reference " +
                               std::to_string(ref.printed_ratio));
        }
    }
    if (row_index != table.size()) {
        problems.push_back("expected " + std::to_string(table.size()) + " candidate rows, saw " +
                           std::to_string(row_index));
    }
    if (inconsistent_cells != 1) {
        problems.push_back("expected exactly 1 reference cell flagged as internally "
                           "inconsistent");
    }
    return problems;
}

// ---------------------------------------------------------------------------
// 6. Qualitative trend on a real desk-scale sweep
std::vector<std::string> run_trend_sweep(std::size_t repetitions) {
    std::vector<std::string> problems;
    bench::BenchConfig cfg;
    cfg.variants = {aes::Variant::A128, aes::Variant::A192, aes::Variant::A256};
    cfg.providers = {keys::DerivationProfile::StandardAes,
                     keys::DerivationProfile::Sha3FullState};
    cfg.sweep_sizes = {1024, 4096, 16384, 65536, 262144, 1048576};
    cfg.sweep_repetitions = repetitions;
    cfg.schedule_iterations = 1;  // unused here
    cfg.seed = 660;

    const auto report = bench::bench_encrypt_sweep(cfg);
    const auto trend = bench::trend_check(report, 0.05);
    if (trend.verdict != bench::TrendVerdict::Pass) {
        problems.push_back(std::string("trend verdict ") +
                           (trend.verdict == bench::TrendVerdict::Fail ? "fail" : "inconclusive") +
                           ": " + trend.detail);
    }
    return problems;
}

std::vector<std::string> check_trend() {
    auto problems = run_trend_sweep(9);
    if (!problems.empty()) {
        // one retry with more repetitions to shed scheduler noise
        const auto retry = run_trend_sweep(15);
        if (retry.empty()) return retry;
        problems.insert(problems.end(), retry.begin(), retry.end());
    }
    return problems;
}

// ---------------------------------------------------------------------------
// 7. Avalanche: sha3 flip rates in band, standard whitening region structural
std::vector<std::string> check_avalanche() {
    std::vector<std::string> problems;
    for (const auto variant : kVariants) {
        const auto rows = analysis::avalanche_matrix(keys::DerivationProfile::Sha3FullState,
                                                     variant, 1000, 770);
        for (const auto& row : rows) {
            if (row.schedule_flip_rate < 0.45 || row.schedule_flip_rate > 0.55) {
                problems.push_back("sha3 flip rate " + std::to_string(row.schedule_flip_rate) +
                                   " out of band at bit " + std::to_string(row.key_bit) +
                                   ", variant " + std::string(aes::variant_name(variant)));
            }
        }
        const auto standard = analysis::avalanche_matrix(keys::DerivationProfile::StandardAes,
                                                         variant, 1000, 771);
        for (std::size_t bit = 0; bit < 128; ++bit) {
            if (standard[bit].whitening_flip_rate != 1.0 / 128.0) {
                problems.push_back("standard whitening flip rate not exactly 1/128 at bit " +
                                   std::to_string(bit) + ", variant " +
                                   std::string(aes::variant_name(variant)));
            }
        }
    }
    return problems;
}

// ---------------------------------------------------------------------------
// 8. Statistical suite behaviour
std::vector<std::string> check_statistics() {
    std::vector<std::string> problems;
    std::mt19937_64 engine(880);
    const int trials = 1000;
    int monobit_pass = 0;
    int runs_pass = 0;
    for (int t = 0; t < trials; ++t) {
        const auto mk = rng::random_master_key(aes::Variant::A128, engine);
        const auto sched = keys::derive_schedule(mk, keys::DerivationProfile::Sha3FullState);
        const auto sample = analysis::BitSample::from_schedule(sched, "sha3-full");
        monobit_pass += analysis::monobit_test(sample).verdict == analysis::Verdict::Pass;
        runs_pass += analysis::runs_test(sample).verdict == analysis::Verdict::Pass;
    }
    if (monobit_pass < 970) {
        problems.push_back("monobit pass rate " + std::to_string(monobit_pass) + "/1000");
    }
    if (runs_pass < 970) {
        problems.push_back("runs pass rate " + std::to_string(runs_pass) + "/1000");
    }

    analysis::BitSample alternating;
    alternating.bytes.assign(176, 0xAA);
    alternating.bit_count = 1408;
    alternating.source = "alternating";
    if (analysis::monobit_test(alternating).verdict != analysis::Verdict::Pass ||
        analysis::runs_test(alternating).verdict != analysis::Verdict::Fail) {
        problems.push_back("alternating sample: expected monobit pass, runs fail");
    }

    analysis::BitSample constant;
    constant.bytes.assign(176, 0x00);
    constant.bit_count = 1408;
    constant.source = "constant";
    if (analysis::monobit_test(constant).verdict != analysis::Verdict::Fail ||
        analysis::runs_test(constant).verdict != analysis::Verdict::NotApplicable) {
        problems.push_back("constant sample: expected monobit fail, runs not-applicable");
    }
    return problems;
}

// ---------------------------------------------------------------------------
// 9. Streamed encryption equals whole-buffer encryption
std::vector<std::string> check_stream_identity() {
    std::vector<std::string> problems;
    std::mt19937_64 engine(990);
    const auto sched = keys::derive_schedule(rng::random_master_key(aes::Variant::A128, engine),
                                             keys::DerivationProfile::Sha3FullState);
    const auto dir = fs::temp_directory_path() / "aesha3-acceptance";
    fs::create_directories(dir);
    const std::size_t sizes[] = {0, 1, 15, 16, 17, 1024, 1u << 20};
    const std::size_t chunks[] = {16, modes::kDefaultChunkBytes};
    for (const std::size_t size : sizes) {
        const auto data = random_bytes(size, engine);
        const auto in_path = dir / ("plain-" + std::to_string(size));
        {
            std::ofstream out(in_path, std::ios::binary | std::ios::trunc);
            out.write(reinterpret_cast<const char*>(data.data()),
                      static_cast<std::streamsize>(data.size()));
        }
        const auto expected = modes::ecb_encrypt(data, sched);
        for (const std::size_t chunk : chunks) {
            const auto out_path = dir / ("ct-" + std::to_string(size));
            modes::encrypt_file(in_path, out_path, sched, chunk);
            std::ifstream in(out_path, std::ios::binary);
            const std::vector<std::uint8_t> streamed{std::istreambuf_iterator<char>(in),
                                                     std::istreambuf_iterator<char>()};
            if (streamed != expected) {
                problems.push_back("streamed != buffered at size " + std::to_string(size) +
                                   ", chunk " + std::to_string(chunk));
            }
        }
    }
    return problems;
}

// ---------------------------------------------------------------------------
// 10. Exhaustive gf_mul oracle equivalence
std::uint8_t gf_mul_oracle(std::uint8_t a, std::uint8_t b) {
    std::uint8_t acc = 0;
    std::uint8_t shifted = a;
    for (int bit = 0; bit < 8; ++bit) {
        if (b & (1u << bit)) acc ^= shifted;
        shifted = static_cast<std::uint8_t>((shifted << 1) ^ ((shifted & 0x80) ? 0x1B : 0x00));
    }
    return acc;
}

std::vector<std::string> check_gf_mul() {
    std::vector<std::string> problems;
    for (int a = 0; a < 256 && problems.size() < 5; ++a) {
        for (int b = 0; b < 256; ++b) {
            const auto x = static_cast<std::uint8_t>(a);
            const auto y = static_cast<std::uint8_t>(b);
            if (aes::gf_mul(x, y) != gf_mul_oracle(x, y)) {
                problems.push_back("gf_mul(" + std::to_string(a) + "," + std::to_string(b) +
                                   ") disagrees with the oracle");
                break;
            }
        }
    }
    return problems;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        double limit_seconds;
        CheckFn run;
    };
    const std::vector<Criterion> criteria = {
        {1, "baseline AES conformance vectors", 1.0, check_aes_conformance},
        {2, "sponge conformance vectors", 5.0, check_sponge_conformance},
        {3, "schedule geometry across providers", 30.0, check_schedule_geometry},
        {4, "round trip, 1000 payloads per variant per provider", 30.0, check_round_trip},
        {5, "efficiency-ratio arithmetic on the reference table", 5.0, check_ratio_arithmetic},
        {6, "qualitative efficiency trend, 1 KB to 1 MB", 600.0, check_trend},
        {7, "avalanche bands and structural whitening rates", 300.0, check_avalanche},
        {8, "statistical suite pass rates and edge samples", 120.0, check_statistics},
        {9, "streamed vs whole-buffer encryption identity", 30.0, check_stream_identity},
        {10, "gf_mul oracle equivalence on all 65536 pairs", 5.0, check_gf_mul},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<std::string> problems;
        try {
            problems = criterion.run();
        } catch (const std::exception& e) {
            problems.push_back(std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > criterion.limit_seconds) {
            problems.push_back("runtime " + std::to_string(elapsed) + " s exceeds " +
                               std::to_string(criterion.limit_seconds) + " s");
        }
        const bool pass = problems.empty();
        failed += !pass;
        std::printf("[%s] %2d. %s (%.2f s)\n", pass ? "PASS" : "FAIL", criterion.id,
                    criterion.title, elapsed);
        for (const auto& p : problems) {
            std::printf("       - %s\n", p.c_str());
        }
    }
    std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed;
}
