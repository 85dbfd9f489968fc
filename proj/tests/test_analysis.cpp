#include <doctest.h>

#include <cmath>
#include <random>

#include "aesha3/analysis.hpp"
#include "aesha3/rng.hpp"
#include "test_util.hpp"

using namespace aesha3;

namespace {

// Independent erfc: Simpson quadrature of the Gaussian tail, no <cmath> erfc.
double erfc_quadrature(double x) {
    const double upper = x + 12.0;  // tail beyond is far below double precision
    const int intervals = 200000;   // even
    const double h = (upper - x) / intervals;
    auto f = [](double t) { return std::exp(-t * t); };
    double sum = f(x) + f(upper);
    for (int i = 1; i < intervals; ++i) {
        sum += f(x + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    const double integral = sum * h / 3.0;
    return 2.0 / std::sqrt(std::acos(-1.0)) * integral;
}

analysis::BitSample sample_from_bits(std::size_t bit_count, std::uint8_t fill) {
    analysis::BitSample s;
    s.bytes.assign((bit_count + 7) / 8, fill);
    s.bit_count = bit_count;
    s.source = "synthetic";
    return s;
}

}  // namespace

TEST_CASE("monobit extremes") {
    const auto zeros = sample_from_bits(1408, 0x00);
    const auto z = analysis::monobit_test(zeros);
    CHECK(z.verdict == analysis::Verdict::Fail);
    CHECK(*z.p_value < 1e-100);

    const auto alternating = sample_from_bits(1408, 0xAA);
    const auto a = analysis::monobit_test(alternating);
    CHECK(a.statistic == 0.0);
    CHECK(*a.p_value == 1.0);
    CHECK(a.verdict == analysis::Verdict::Pass);
}

TEST_CASE("monobit hand-computed case: 100 bits, 58 ones") {
    analysis::BitSample s;
    s.bytes.assign(13, 0x00);
    for (std::size_t i = 0; i < 7; ++i) s.bytes[i] = 0xFF;  // 56 ones
    s.bytes[7] = 0xC0;                                      // 2 more
    s.bit_count = 100;
    s.source = "hand";
    REQUIRE(s.ones() == 58);

    const auto r = analysis::monobit_test(s);
    CHECK(r.statistic == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(*r.p_value == doctest::Approx(0.1096).epsilon(2e-3));
    // the library's erfc against an independent quadrature route
    CHECK(*r.p_value == doctest::Approx(erfc_quadrature(1.6 / std::sqrt(2.0))).epsilon(1e-9));
    CHECK(r.verdict == analysis::Verdict::Pass);
}

TEST_CASE("monobit rejects undersized samples") {
    CHECK_THROWS_AS(analysis::monobit_test(sample_from_bits(99, 0xFF)), std::invalid_argument);
    CHECK_NOTHROW(analysis::monobit_test(sample_from_bits(100, 0xAA)));
}

TEST_CASE("runs test extremes") {
    const auto alternating = sample_from_bits(1408, 0xAA);
    const auto a = analysis::runs_test(alternating);
    CHECK(a.statistic == 1408.0);  // maximal run count
    CHECK(*a.p_value < 1e-100);
    CHECK(a.verdict == analysis::Verdict::Fail);

    const auto zeros = sample_from_bits(1408, 0x00);
    const auto z = analysis::runs_test(zeros);
    CHECK(z.verdict == analysis::Verdict::NotApplicable);
    CHECK_FALSE(z.p_value.has_value());
}

TEST_CASE("sha3 schedules pass monobit and runs almost always") {
    std::mt19937_64 engine(157);
    const int trials = 300;
    int monobit_pass = 0;
    int runs_pass = 0;
    for (int t = 0; t < trials; ++t) {
        const auto mk = rng::random_master_key(aes::Variant::A128, engine);
        const auto sched = keys::derive_schedule(mk, keys::DerivationProfile::Sha3FullState);
        const auto sample = analysis::BitSample::from_schedule(sched, "sha3-full");
        monobit_pass += analysis::monobit_test(sample).verdict == analysis::Verdict::Pass;
        runs_pass += analysis::runs_test(sample).verdict == analysis::Verdict::Pass;
    }
    CHECK(monobit_pass >= trials * 0.96);
    CHECK(runs_pass >= trials * 0.96);
}

TEST_CASE("avalanche matrix argument validation") {
    CHECK_THROWS_AS(analysis::avalanche_matrix(keys::DerivationProfile::Sha3FullState,
                                               aes::Variant::A128, 99, 1),
                    std::invalid_argument);
}

TEST_CASE("sha3 avalanche sits near one half for every input bit") {
    const auto rows = analysis::avalanche_matrix(keys::DerivationProfile::Sha3FullState,
                                                 aes::Variant::A128, 100, 163);
    REQUIRE(rows.size() == 128);
    for (const auto& row : rows) {
        CHECK(row.schedule_flip_rate > 0.45);
        CHECK(row.schedule_flip_rate < 0.55);
        CHECK(row.whitening_flip_rate > 0.40);
        CHECK(row.whitening_flip_rate < 0.60);
    }
}

TEST_CASE("standard avalanche: whitening region flips exactly one bit") {
    const auto rows = analysis::avalanche_matrix(keys::DerivationProfile::StandardAes,
                                                 aes::Variant::A128, 100, 167);
    REQUIRE(rows.size() == 128);
    for (const auto& row : rows) {
        CHECK(row.whitening_flip_rate == 1.0 / 128.0);  // exact, structural
        CHECK(row.schedule_flip_rate < 0.45);           // visibly below the sha3 band
    }

    // Beyond the 128-bit prefix the whitening key cannot move at all.
    const auto rows192 = analysis::avalanche_matrix(keys::DerivationProfile::StandardAes,
                                                    aes::Variant::A192, 100, 173);
    REQUIRE(rows192.size() == 192);
    for (std::size_t bit = 128; bit < 192; ++bit) {
        CHECK(rows192[bit].whitening_flip_rate == 0.0);
    }
}

TEST_CASE("compare_providers structure and determinism") {
    const auto report = analysis::compare_providers(aes::Variant::A128, 100, 179);
    CHECK(report.rows.size() == 8);  // 2 providers x 4 measures
    CHECK(report.seed == 179);

    int with_p = 0;
    for (const auto& row : report.rows) {
        if (row.p_value) {
            ++with_p;
            CHECK(*row.p_value >= 0.0);
            CHECK(*row.p_value <= 1.0);
        }
    }
    CHECK(with_p >= 4);

    const auto again = analysis::compare_providers(aes::Variant::A128, 100, 179);
    CHECK(analysis::to_csv(report) == analysis::to_csv(again));

    const auto other_seed = analysis::compare_providers(aes::Variant::A128, 100, 181);
    CHECK(analysis::to_csv(report) != analysis::to_csv(other_seed));
}

TEST_CASE("compare_providers separates the whitening-key behaviour") {
    const auto report = analysis::compare_providers(aes::Variant::A128, 200, 191);
    double standard_distance = -1.0;
    double sha3_distance = -1.0;
    for (const auto& row : report.rows) {
        if (row.test == "whitening-distance") {
            if (row.provider == "standard") standard_distance = row.statistic;
            if (row.provider == "sha3-full") sha3_distance = row.statistic;
        }
    }
    CHECK(standard_distance == 0.0);  // round key 0 is the master key
    CHECK(sha3_distance > 0.45);      // about 64 of 128 bits differ
    CHECK(sha3_distance < 0.55);
}

TEST_CASE("compare_providers argument validation") {
    CHECK_THROWS_AS(analysis::compare_providers(aes::Variant::A128, 99, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(analysis::compare_providers(aes::Variant::A128, 100, 1,
                                                keys::DerivationProfile::StandardAes),
                    std::invalid_argument);
}

TEST_CASE("csv and text renderings carry every row") {
    const auto report = analysis::compare_providers(aes::Variant::A192, 100, 193,
                                                    keys::DerivationProfile::Sha3Shake);
    const auto csv = analysis::to_csv(report);
    const auto text = analysis::to_text(report);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);  // header + 8 rows
    CHECK(csv.find("test,provider,variant,n,statistic,p_value,verdict,seed") == 0);
    CHECK(csv.find("sha3-shake") != std::string::npos);
    CHECK(text.find("whitening-distance") != std::string::npos);
}
