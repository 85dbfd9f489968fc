#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "aesha3/aes.hpp"
#include "aesha3/keccak.hpp"
#include "aesha3/keyschedule.hpp"
#include "aesha3/modes.hpp"
#include "aesha3/rng.hpp"

using namespace aesha3;

namespace {

keys::MasterKey fixed_key(aes::Variant variant) {
    std::mt19937_64 engine(1);
    return rng::random_master_key(variant, engine);
}

void BM_KeccakF(benchmark::State& state) {
    keccak::KeccakState s;
    s.lanes[0] = 1;
    for (auto _ : state) {
        s = keccak::keccak_f(s);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_KeccakF);

void BM_Sha3_256_1KiB(benchmark::State& state) {
    std::mt19937_64 engine(2);
    std::vector<std::uint8_t> message(1024);
    rng::fill_random(message, engine);
    for (auto _ : state) {
        auto digest = keccak::sha3_256(message);
        benchmark::DoNotOptimize(digest);
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * message.size()));
}
BENCHMARK(BM_Sha3_256_1KiB);

void BM_EncryptBlock(benchmark::State& state) {
    const auto variant = static_cast<aes::Variant>(state.range(0));
    const auto sched = keys::expand_key_standard(fixed_key(variant));
    aes::Block block{};
    for (auto _ : state) {
        block = aes::encrypt_block(block, sched);
        benchmark::DoNotOptimize(block);
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * 16));
}
BENCHMARK(BM_EncryptBlock)->Arg(0)->Arg(1)->Arg(2);

void BM_ExpandStandard(benchmark::State& state) {
    const auto variant = static_cast<aes::Variant>(state.range(0));
    const auto mk = fixed_key(variant);
    for (auto _ : state) {
        auto sched = keys::expand_key_standard(mk);
        benchmark::DoNotOptimize(sched);
    }
}
BENCHMARK(BM_ExpandStandard)->Arg(0)->Arg(1)->Arg(2);

void BM_DeriveSha3FullState(benchmark::State& state) {
    const auto variant = static_cast<aes::Variant>(state.range(0));
    const auto mk = fixed_key(variant);
    for (auto _ : state) {
        auto sched = keys::derive_subkeys_sha3(mk, keys::DerivationProfile::Sha3FullState);
        benchmark::DoNotOptimize(sched);
    }
}
BENCHMARK(BM_DeriveSha3FullState)->Arg(0)->Arg(1)->Arg(2);

void BM_EcbEncrypt64KiB(benchmark::State& state) {
    std::mt19937_64 engine(3);
    std::vector<std::uint8_t> payload(64 * 1024);
    rng::fill_random(payload, engine);
    const auto sched = keys::expand_key_standard(fixed_key(aes::Variant::A128));
    for (auto _ : state) {
        auto ct = modes::ecb_encrypt(payload, sched);
        benchmark::DoNotOptimize(ct);
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * payload.size()));
}
BENCHMARK(BM_EcbEncrypt64KiB);

}  // namespace

BENCHMARK_MAIN();
