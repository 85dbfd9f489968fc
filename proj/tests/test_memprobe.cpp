// Heap high-water probe for the streaming path: encrypting a 16 MB file must
// buffer no more than the chunk size plus change, never the whole file.

#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <new>
#include <random>

#include "aesha3/modes.hpp"
#include "aesha3/rng.hpp"
#include "test_util.hpp"

namespace {

std::atomic<std::size_t> g_live{0};
std::atomic<std::size_t> g_peak{0};
std::atomic<bool> g_armed{false};

constexpr std::size_t kHeader = 16;  // keeps max_align_t alignment

void note_alloc(std::size_t n) {
    if (!g_armed.load(std::memory_order_relaxed)) return;
    const std::size_t live = g_live.fetch_add(n, std::memory_order_relaxed) + n;
    std::size_t peak = g_peak.load(std::memory_order_relaxed);
    while (live > peak && !g_peak.compare_exchange_weak(peak, live, std::memory_order_relaxed)) {
    }
}

void* probe_new(std::size_t n) {
    void* raw = std::malloc(n + kHeader);
    if (!raw) throw std::bad_alloc();
    *static_cast<std::size_t*>(raw) = n;
    note_alloc(n);
    return static_cast<char*>(raw) + kHeader;
}

void probe_delete(void* p) noexcept {
    if (!p) return;
    void* raw = static_cast<char*>(p) - kHeader;
    const std::size_t n = *static_cast<std::size_t*>(raw);
    if (g_armed.load(std::memory_order_relaxed)) {
        g_live.fetch_sub(n, std::memory_order_relaxed);
    }
    std::free(raw);
}

}  // namespace

void* operator new(std::size_t n) { return probe_new(n); }
void* operator new[](std::size_t n) { return probe_new(n); }
void operator delete(void* p) noexcept { probe_delete(p); }
void operator delete[](void* p) noexcept { probe_delete(p); }
void operator delete(void* p, std::size_t) noexcept { probe_delete(p); }
void operator delete[](void* p, std::size_t) noexcept { probe_delete(p); }

TEST_CASE("streaming a 16 MB file keeps the buffer near the chunk size") {
    namespace fs = std::filesystem;
    using namespace aesha3;

    const auto dir = fs::temp_directory_path() / "aesha3-memprobe";
    fs::create_directories(dir);
    const auto in_path = dir / "large.bin";
    const auto out_path = dir / "large.enc";

    const std::size_t file_size = 16u << 20;
    {
        std::mt19937_64 engine(211);
        std::ofstream out(in_path, std::ios::binary | std::ios::trunc);
        std::vector<std::uint8_t> block(1u << 20);
        for (int i = 0; i < 16; ++i) {
            rng::fill_random(block, engine);
            out.write(reinterpret_cast<const char*>(block.data()),
                      static_cast<std::streamsize>(block.size()));
        }
        REQUIRE(out.good());
    }

    std::mt19937_64 engine(212);
    const auto sched = keys::derive_schedule(rng::random_master_key(aes::Variant::A128, engine),
                                             keys::DerivationProfile::Sha3FullState);

    const std::size_t chunk = modes::kDefaultChunkBytes;  // 64 KiB
    g_live = 0;
    g_peak = 0;
    g_armed = true;
    modes::encrypt_file(in_path, out_path, sched, chunk);
    g_armed = false;

    const std::size_t peak = g_peak.load();
    // chunk buffer + stream internals; far below the 16 MB payload
    CHECK(peak >= chunk);
    CHECK(peak <= 4 * chunk);

    CHECK(fs::file_size(out_path) == file_size + 16);
}
