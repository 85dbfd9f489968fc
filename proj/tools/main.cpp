#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aesha3/analysis.hpp"
#include "aesha3/bench.hpp"
#include "aesha3/errors.hpp"
#include "aesha3/hex.hpp"
#include "aesha3/keyschedule.hpp"
#include "aesha3/modes.hpp"
#include "aesha3/rng.hpp"

namespace {

namespace fs = std::filesystem;
using aesha3::aes::Variant;
using aesha3::keys::DerivationProfile;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitMalformed = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Variant variant_from_flag(int bits) {
    switch (bits) {
        case 128: return Variant::A128;
        case 192: return Variant::A192;
        case 256: return Variant::A256;
    }
    throw UsageError("--variant must be 128, 192 or 256");
}

DerivationProfile profile_from_flag(const std::string& name) {
    const auto p = aesha3::keys::profile_from_name(name);
    if (!p) {
        throw UsageError("--profile must be standard, sha3-full or sha3-shake");
    }
    return *p;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed) {
    if (flag_seed) {
        return *flag_seed;
    }
    if (const char* env = std::getenv("AESHA3_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError("AESHA3_SEED must be an unsigned integer");
        }
    }
    return std::random_device{}();
}

aesha3::keys::MasterKey load_key(const std::string& key_hex, const std::string& key_file) {
    if (!key_hex.empty() && !key_file.empty()) {
        throw UsageError("pass either --key or --key-file, not both");
    }
    if (!key_hex.empty()) {
        return aesha3::keys::parse_key_hex(key_hex);
    }
    if (!key_file.empty()) {
        return aesha3::keys::load_key_file(key_file).front();
    }
    throw UsageError("a key is required (--key or --key-file)");
}

void check_variant_flag(const aesha3::keys::MasterKey& mk, const std::optional<int>& bits) {
    if (bits && variant_from_flag(*bits) != mk.variant) {
        throw UsageError("--variant does not match the key length");
    }
}

void warn_ecb() {
    std::cerr << "warning: ECB mode is benchmark-only; identical plaintext blocks produce "
                 "identical ciphertext blocks\n";
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw aesha3::IoError("cannot write file: " + path.string());
    }
    out << text;
    if (!out) {
        throw aesha3::IoError("failed writing file: " + path.string());
    }
}

// Sizes: a comma list ("1KB,4KB,64KB") or a doubling range ("1KB..16MB").
std::size_t parse_one_size(std::string token) {
    std::size_t mult = 1;
    if (token.size() >= 2) {
        const std::string suffix = token.substr(token.size() - 2);
        if (suffix == "KB" || suffix == "kb") {
            mult = 1024;
            token.resize(token.size() - 2);
        } else if (suffix == "MB" || suffix == "mb") {
            mult = 1024 * 1024;
            token.resize(token.size() - 2);
        } else if (!token.empty() && (token.back() == 'B' || token.back() == 'b')) {
            token.pop_back();
        }
    }
    try {
        const unsigned long long v = std::stoull(token);
        if (v == 0) throw UsageError("payload size must be positive");
        return static_cast<std::size_t>(v) * mult;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("cannot parse size token '" + token + "'");
    }
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> sizes;
    const auto range = text.find("..");
    if (range != std::string::npos) {
        const std::size_t lo = parse_one_size(text.substr(0, range));
        const std::size_t hi = parse_one_size(text.substr(range + 2));
        if (lo > hi) throw UsageError("size range start exceeds end");
        for (std::size_t s = lo; s <= hi; s *= 2) {
            sizes.push_back(s);
        }
        return sizes;
    }
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            if (i > start) sizes.push_back(parse_one_size(text.substr(start, i - start)));
            start = i + 1;
        }
    }
    if (sizes.empty()) throw UsageError("--sizes is empty");
    return sizes;
}

// Plain key=value file; flags given on the command line win.
void apply_config_file(const fs::path& path, std::optional<std::uint64_t>& seed,
                       std::size_t& iters, std::size_t& reps, std::size_t& warmup,
                       std::string& sizes, std::string& format, bool seed_set, bool iters_set,
                       bool reps_set, bool warmup_set, bool sizes_set, bool format_set) {
    std::ifstream in(path);
    if (!in) {
        throw aesha3::IoError("cannot open config file: " + path.string());
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line is not key=value: " + line);
        }
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        try {
            if (key == "seed" && !seed_set) seed = std::stoull(value);
            else if (key == "iters" && !iters_set) iters = std::stoull(value);
            else if (key == "reps" && !reps_set) reps = std::stoull(value);
            else if (key == "warmup" && !warmup_set) warmup = std::stoull(value);
            else if (key == "sizes" && !sizes_set) sizes = value;
            else if (key == "format" && !format_set) format = value;
        } catch (const std::exception&) {
            throw UsageError("bad config value for " + key + ": " + value);
        }
    }
}

int run_cli(int argc, char** argv) {
    CLI::App app{"AES with interchangeable key-schedule providers: the standard expansion and "
                 "sponge-derived subkeys, plus timing and randomness experiments"};
    app.require_subcommand(1);

    // ---- keygen
    auto* keygen = app.add_subcommand("keygen", "generate a random master key (lowercase hex)");
    int kg_variant = 128;
    std::string kg_out;
    std::optional<std::uint64_t> kg_seed;
    keygen->add_option("--variant", kg_variant, "key size in bits")->default_val(128);
    keygen->add_option("--out", kg_out, "output key file (stdout when absent)");
    keygen->add_option("--seed", kg_seed, "deterministic RNG seed");

    // ---- derive
    auto* derive = app.add_subcommand("derive", "print the round-key schedule, one key per line");
    std::string dv_key, dv_key_file, dv_profile;
    std::optional<int> dv_variant;
    derive->add_option("--key", dv_key, "master key as lowercase hex");
    derive->add_option("--key-file", dv_key_file, "key file (first key is used)");
    derive->add_option("--profile", dv_profile, "standard | sha3-full | sha3-shake");
    derive->add_option("--variant", dv_variant, "expected key size in bits (checked)");

    // ---- encrypt / decrypt
    auto* encrypt = app.add_subcommand("encrypt", "ECB-encrypt a file (benchmark-only mode)");
    std::string en_in, en_out, en_key, en_key_file, en_profile;
    std::optional<int> en_variant;
    std::size_t en_chunk = aesha3::modes::kDefaultChunkBytes;
    encrypt->add_option("input", en_in, "input file")->required();
    encrypt->add_option("--out", en_out, "output file (default: input + .enc)");
    encrypt->add_option("--key", en_key, "master key as lowercase hex");
    encrypt->add_option("--key-file", en_key_file, "key file");
    encrypt->add_option("--profile", en_profile, "standard | sha3-full | sha3-shake");
    encrypt->add_option("--variant", en_variant, "expected key size in bits (checked)");
    encrypt->add_option("--chunk", en_chunk, "streaming chunk bytes (multiple of 16)");

    auto* decrypt = app.add_subcommand("decrypt", "decrypt an ECB-encrypted file");
    std::string de_in, de_out, de_key, de_key_file, de_profile;
    std::optional<int> de_variant;
    std::size_t de_chunk = aesha3::modes::kDefaultChunkBytes;
    decrypt->add_option("input", de_in, "ciphertext file")->required();
    decrypt->add_option("--out", de_out, "output file (default: input + .dec)");
    decrypt->add_option("--key", de_key, "master key as lowercase hex");
    decrypt->add_option("--key-file", de_key_file, "key file");
    decrypt->add_option("--profile", de_profile, "override the sidecar profile");
    decrypt->add_option("--variant", de_variant, "expected key size in bits (checked)");
    decrypt->add_option("--chunk", de_chunk, "streaming chunk bytes (multiple of 16)");

    // ---- bench
    auto* bench = app.add_subcommand("bench", "run the schedule-latency and encryption sweeps");
    std::string bn_sizes = "1KB..16MB", bn_format = "md", bn_out, bn_config;
    std::vector<int> bn_variants;
    std::vector<std::string> bn_profiles;
    std::size_t bn_iters = 10000, bn_reps = 3, bn_warmup = 100;
    std::optional<std::uint64_t> bn_seed;
    bench->add_option("--sizes", bn_sizes, "comma list or doubling range, e.g. 1KB..16MB");
    bench->add_option("--iters", bn_iters, "key-schedule timing iterations");
    bench->add_option("--reps", bn_reps, "sweep repetitions per measurement");
    bench->add_option("--warmup", bn_warmup, "untimed warmup iterations");
    bench->add_option("--variant", bn_variants, "variants to bench (repeatable; default all)");
    bench->add_option("--profile", bn_profiles,
                      "sha3 providers to bench against the standard baseline (repeatable)");
    bench->add_option("--seed", bn_seed, "deterministic RNG seed");
    bench->add_option("--format", bn_format, "md | csv");
    bench->add_option("--out", bn_out, "output directory (stdout when absent)");
    bench->add_option("--config", bn_config, "key=value config file (flags override)");

    // ---- analyze
    auto* analyze = app.add_subcommand("analyze", "compare subkey randomness across providers");
    int an_variant = 128;
    std::size_t an_trials = 1000;
    std::string an_profile, an_format = "md", an_out;
    std::optional<std::uint64_t> an_seed;
    analyze->add_option("--variant", an_variant, "key size in bits");
    analyze->add_option("--trials", an_trials, "random master keys per provider");
    analyze->add_option("--profile", an_profile, "sha3 profile to compare (default sha3-full)");
    analyze->add_option("--seed", an_seed, "deterministic RNG seed");
    analyze->add_option("--format", an_format, "md | csv");
    analyze->add_option("--out", an_out, "output file (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    auto default_profile = [](std::string& name) {
        if (name.empty()) {
            name = "sha3-full";
            std::cerr << "profile: sha3-full (default)\n";
        }
        return profile_from_flag(name);
    };

    if (keygen->parsed()) {
        const Variant variant = variant_from_flag(kg_variant);
        std::mt19937_64 engine(resolve_seed(kg_seed));
        const auto mk = aesha3::rng::random_master_key(variant, engine);
        if (kg_out.empty()) {
            std::cout << aesha3::hex::encode(mk.bytes) << '\n';
        } else {
            aesha3::keys::write_key_file(kg_out, mk);
        }
        return kExitOk;
    }

    if (derive->parsed()) {
        const auto mk = load_key(dv_key, dv_key_file);
        check_variant_flag(mk, dv_variant);
        const auto profile = default_profile(dv_profile);
        const auto sched = aesha3::keys::derive_schedule(mk, profile);
        for (const auto& rk : sched.keys) {
            std::cout << aesha3::hex::encode(rk.bytes) << '\n';
        }
        return kExitOk;
    }

    if (encrypt->parsed()) {
        const auto mk = load_key(en_key, en_key_file);
        check_variant_flag(mk, en_variant);
        const auto profile = default_profile(en_profile);
        warn_ecb();
        const fs::path out = en_out.empty() ? fs::path(en_in + ".enc") : fs::path(en_out);
        const auto sched = aesha3::keys::derive_schedule(mk, profile);
        aesha3::modes::encrypt_file(en_in, out, sched, en_chunk);
        aesha3::modes::write_sidecar(out, {mk.variant, profile, "pkcs7"});
        std::cout << out.string() << '\n';
        return kExitOk;
    }

    if (decrypt->parsed()) {
        const auto mk = load_key(de_key, de_key_file);
        check_variant_flag(mk, de_variant);
        const auto sidecar = aesha3::modes::read_sidecar(de_in);
        DerivationProfile profile;
        if (!de_profile.empty()) {
            profile = profile_from_flag(de_profile);
        } else if (sidecar) {
            profile = sidecar->profile;
        } else {
            throw UsageError("no sidecar found for " + de_in + "; pass --profile");
        }
        if (sidecar && sidecar->variant != mk.variant) {
            throw UsageError("key length does not match the sidecar variant");
        }
        warn_ecb();
        const fs::path out = de_out.empty() ? fs::path(de_in + ".dec") : fs::path(de_out);
        const auto sched = aesha3::keys::derive_schedule(mk, profile);
        aesha3::modes::decrypt_file(de_in, out, sched, de_chunk);
        std::cout << out.string() << '\n';
        return kExitOk;
    }

    if (bench->parsed()) {
        if (!bn_config.empty()) {
            apply_config_file(bn_config, bn_seed, bn_iters, bn_reps, bn_warmup, bn_sizes,
                              bn_format, bench->count("--seed") > 0, bench->count("--iters") > 0,
                              bench->count("--reps") > 0, bench->count("--warmup") > 0,
                              bench->count("--sizes") > 0, bench->count("--format") > 0);
        }
        if (bn_format != "md" && bn_format != "csv") {
            throw UsageError("--format must be md or csv");
        }
        aesha3::bench::BenchConfig cfg;
        cfg.schedule_iterations = bn_iters;
        cfg.sweep_repetitions = bn_reps;
        cfg.warmup_iterations = bn_warmup;
        cfg.sweep_sizes = parse_sizes(bn_sizes);
        cfg.seed = resolve_seed(bn_seed);
        if (!bn_variants.empty()) {
            cfg.variants.clear();
            for (const int v : bn_variants) cfg.variants.push_back(variant_from_flag(v));
        }
        cfg.providers = {DerivationProfile::StandardAes};
        if (bn_profiles.empty()) {
            cfg.providers.push_back(DerivationProfile::Sha3FullState);
            std::cerr << "profile: sha3-full (default)\n";
        } else {
            for (const auto& name : bn_profiles) {
                const auto p = profile_from_flag(name);
                if (p != DerivationProfile::StandardAes) cfg.providers.push_back(p);
            }
        }
        cfg.validate();

        const auto fmt = bn_format == "md" ? aesha3::bench::TableFormat::Markdown
                                           : aesha3::bench::TableFormat::Csv;
        const auto schedule_report = aesha3::bench::bench_key_schedule(cfg);
        const auto sweep_report = aesha3::bench::bench_encrypt_sweep(cfg);
        std::string trend_line = "skipped (needs at least 4 sizes)";
        if (cfg.sweep_sizes.size() >= 4) {
            const auto trend = aesha3::bench::trend_check(sweep_report);
            const char* verdict = trend.verdict == aesha3::bench::TrendVerdict::Pass ? "pass"
                                  : trend.verdict == aesha3::bench::TrendVerdict::Fail
                                      ? "fail"
                                      : "inconclusive";
            trend_line = std::string(verdict) + " (" + trend.detail + ")";
        }

        const std::string schedule_table = aesha3::bench::emit_table(schedule_report, fmt);
        const std::string sweep_table = aesha3::bench::emit_table(sweep_report, fmt);
        const std::string sweep_csv =
            aesha3::bench::emit_table(sweep_report, aesha3::bench::TableFormat::Csv);
        const std::string plot = aesha3::bench::emit_plot_data(sweep_report);

        if (bn_out.empty()) {
            std::cout << "## Key-schedule latency (" << bn_iters << " iterations)\n\n"
                      << schedule_table << "\n## Encryption sweep\n\n"
                      << sweep_table << "\ntrend: " << trend_line << '\n';
        } else {
            fs::create_directories(bn_out);
            const std::string ext = bn_format == "md" ? ".md" : ".csv";
            write_text_file(fs::path(bn_out) / ("key_schedule" + ext), schedule_table);
            write_text_file(fs::path(bn_out) / ("sweep" + ext), sweep_table);
            write_text_file(fs::path(bn_out) / "sweep_records.csv", sweep_csv);
            write_text_file(fs::path(bn_out) / "plot_data.csv", plot);
            std::cout << "trend: " << trend_line << '\n'
                      << "wrote " << bn_out << "/{key_schedule" << ext << ",sweep" << ext
                      << ",sweep_records.csv,plot_data.csv}\n";
        }
        return kExitOk;
    }

    if (analyze->parsed()) {
        if (an_format != "md" && an_format != "csv") {
            throw UsageError("--format must be md or csv");
        }
        const Variant variant = variant_from_flag(an_variant);
        DerivationProfile profile = DerivationProfile::Sha3FullState;
        if (!an_profile.empty()) {
            profile = profile_from_flag(an_profile);
            if (profile == DerivationProfile::StandardAes) {
                throw UsageError("analyze compares against a sha3 profile; pass sha3-full or "
                                 "sha3-shake");
            }
        } else {
            std::cerr << "profile: sha3-full (default)\n";
        }
        const std::uint64_t seed = resolve_seed(an_seed);
        const auto report = aesha3::analysis::compare_providers(variant, an_trials, seed, profile);
        const std::string text = an_format == "md" ? aesha3::analysis::to_text(report)
                                                   : aesha3::analysis::to_csv(report);
        if (an_out.empty()) {
            std::cout << text;
        } else {
            write_text_file(an_out, text);
        }
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const aesha3::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const aesha3::MalformedKeyError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const aesha3::MalformedCiphertextError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const aesha3::MalformedPaddingError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
