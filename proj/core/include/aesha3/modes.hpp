#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "aesha3/aes.hpp"
#include "aesha3/keyschedule.hpp"

namespace aesha3::modes {

inline constexpr std::size_t kDefaultChunkBytes = 64 * 1024;

/// PKCS#7: appends n copies of byte n (1 <= n <= 16); a full extra block when
/// the input length is already a multiple of 16.
std::vector<std::uint8_t> pad(std::span<const std::uint8_t> data);

/// Inverse of pad. Throws MalformedCiphertextError when the length is not a
/// positive multiple of 16, MalformedPaddingError on an invalid suffix.
std::vector<std::uint8_t> unpad(std::span<const std::uint8_t> data);

/// ECB over the padded payload: each 16-byte block encrypted independently.
/// Deterministic per block — identical plaintext blocks yield identical
/// ciphertext blocks, which is why this mode is benchmark-only.
std::vector<std::uint8_t> ecb_encrypt(std::span<const std::uint8_t> data,
                                      const aes::RoundKeySchedule& sched);

/// Per-block decrypt then unpad. Same error taxonomy as unpad.
std::vector<std::uint8_t> ecb_decrypt(std::span<const std::uint8_t> data,
                                      const aes::RoundKeySchedule& sched);

/// Streams the input file in chunks of chunk_bytes (a positive multiple of
/// 16), encrypting blocks independently; padding lands on the final chunk
/// only. Output is byte-identical to ecb_encrypt over the whole file, with
/// peak buffering bounded by the chunk size. Returns the output path.
std::filesystem::path encrypt_file(const std::filesystem::path& input,
                                   const std::filesystem::path& output,
                                   const aes::RoundKeySchedule& sched,
                                   std::size_t chunk_bytes = kDefaultChunkBytes);

/// Streaming inverse of encrypt_file.
std::filesystem::path decrypt_file(const std::filesystem::path& input,
                                   const std::filesystem::path& output,
                                   const aes::RoundKeySchedule& sched,
                                   std::size_t chunk_bytes = kDefaultChunkBytes);

// Ciphertext files are raw bytes, no header. A plain-text key=value sidecar
// (<ciphertext path> + ".meta") records what is needed to decrypt.
struct SidecarInfo {
    aes::Variant variant = aes::Variant::A128;
    keys::DerivationProfile profile = keys::DerivationProfile::Sha3FullState;
    std::string padding = "pkcs7";
};

std::filesystem::path sidecar_path(const std::filesystem::path& ciphertext_path);
void write_sidecar(const std::filesystem::path& ciphertext_path, const SidecarInfo& info);
std::optional<SidecarInfo> read_sidecar(const std::filesystem::path& ciphertext_path);

}  // namespace aesha3::modes
