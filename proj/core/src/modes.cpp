#include "aesha3/modes.hpp"

#include <fstream>
#include <stdexcept>

#include "aesha3/errors.hpp"

namespace aesha3::modes {

namespace {

constexpr std::size_t kBlock = aes::kBlockBytes;

void check_chunk_size(std::size_t chunk_bytes) {
    if (chunk_bytes == 0 || chunk_bytes % kBlock != 0) {
        throw std::invalid_argument("chunk size must be a positive multiple of 16 bytes");
    }
}

void encrypt_blocks_inplace(std::span<std::uint8_t> buf, const aes::RoundKeySchedule& sched) {
    aes::Block block;
    for (std::size_t off = 0; off < buf.size(); off += kBlock) {
        std::copy_n(buf.begin() + static_cast<std::ptrdiff_t>(off), kBlock, block.begin());
        block = aes::encrypt_block(block, sched);
        std::copy_n(block.begin(), kBlock, buf.begin() + static_cast<std::ptrdiff_t>(off));
    }
}

void decrypt_blocks_inplace(std::span<std::uint8_t> buf, const aes::RoundKeySchedule& sched) {
    aes::Block block;
    for (std::size_t off = 0; off < buf.size(); off += kBlock) {
        std::copy_n(buf.begin() + static_cast<std::ptrdiff_t>(off), kBlock, block.begin());
        block = aes::decrypt_block(block, sched);
        std::copy_n(block.begin(), kBlock, buf.begin() + static_cast<std::ptrdiff_t>(off));
    }
}

// Validates a PKCS#7 suffix and returns its length (1..16).
std::size_t padding_len(std::span<const std::uint8_t> data) {
    const std::uint8_t fill = data.back();
    if (fill == 0 || fill > kBlock) {
        throw MalformedPaddingError("padding byte " + std::to_string(int(fill)) + " out of range");
    }
    for (std::size_t i = data.size() - fill; i < data.size(); ++i) {
        if (data[i] != fill) {
            throw MalformedPaddingError("inconsistent padding suffix");
        }
    }
    return fill;
}

}  // namespace

std::vector<std::uint8_t> pad(std::span<const std::uint8_t> data) {
    const std::size_t fill = kBlock - data.size() % kBlock;  // 1..16
    std::vector<std::uint8_t> out(data.begin(), data.end());
    out.insert(out.end(), fill, static_cast<std::uint8_t>(fill));
    return out;
}

std::vector<std::uint8_t> unpad(std::span<const std::uint8_t> data) {
    if (data.empty() || data.size() % kBlock != 0) {
        throw MalformedCiphertextError("padded data length must be a positive multiple of 16, got " +
                                       std::to_string(data.size()));
    }
    const std::size_t fill = padding_len(data);
    return {data.begin(), data.end() - static_cast<std::ptrdiff_t>(fill)};
}

std::vector<std::uint8_t> ecb_encrypt(std::span<const std::uint8_t> data,
                                      const aes::RoundKeySchedule& sched) {
    std::vector<std::uint8_t> out = pad(data);
    encrypt_blocks_inplace(out, sched);
    return out;
}

std::vector<std::uint8_t> ecb_decrypt(std::span<const std::uint8_t> data,
                                      const aes::RoundKeySchedule& sched) {
    if (data.empty() || data.size() % kBlock != 0) {
        throw MalformedCiphertextError("ciphertext length must be a positive multiple of 16, got " +
                                       std::to_string(data.size()));
    }
    std::vector<std::uint8_t> buf(data.begin(), data.end());
    decrypt_blocks_inplace(buf, sched);
    return unpad(buf);
}

std::filesystem::path encrypt_file(const std::filesystem::path& input,
                                   const std::filesystem::path& output,
                                   const aes::RoundKeySchedule& sched, std::size_t chunk_bytes) {
    check_chunk_size(chunk_bytes);
    std::ifstream in(input, std::ios::binary);
    if (!in) {
        throw IoError("cannot open input file: " + input.string());
    }
    std::ofstream out(output, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open output file: " + output.string());
    }

    // One buffer, chunk plus room for the final padding block; the whole
    // file is never resident.
    std::vector<std::uint8_t> buf(chunk_bytes + kBlock);
    bool saw_final = false;
    while (!saw_final) {
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(chunk_bytes));
        if (in.bad()) {
            throw IoError("read error on input file: " + input.string());
        }
        const std::size_t got = static_cast<std::size_t>(in.gcount());
        saw_final = got < chunk_bytes;  // eof: this chunk takes the padding
        std::size_t n = got;
        if (saw_final) {
            const std::uint8_t fill = static_cast<std::uint8_t>(kBlock - got % kBlock);
            std::fill_n(buf.begin() + static_cast<std::ptrdiff_t>(got), fill, fill);
            n = got + fill;
        }
        encrypt_blocks_inplace(std::span(buf.data(), n), sched);
        out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(n));
        if (!out) {
            throw IoError("write error on output file: " + output.string());
        }
    }
    out.flush();
    if (!out) {
        throw IoError("write error on output file: " + output.string());
    }
    return output;
}

std::filesystem::path decrypt_file(const std::filesystem::path& input,
                                   const std::filesystem::path& output,
                                   const aes::RoundKeySchedule& sched, std::size_t chunk_bytes) {
    check_chunk_size(chunk_bytes);
    std::ifstream in(input, std::ios::binary);
    if (!in) {
        throw IoError("cannot open input file: " + input.string());
    }
    std::error_code ec;
    const auto total = std::filesystem::file_size(input, ec);
    if (ec) {
        throw IoError("cannot stat input file: " + input.string());
    }
    if (total == 0 || total % kBlock != 0) {
        throw MalformedCiphertextError("ciphertext file length must be a positive multiple of 16: " +
                                       input.string());
    }
    std::ofstream out(output, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open output file: " + output.string());
    }

    std::vector<std::uint8_t> buf(chunk_bytes);
    std::uintmax_t remaining = total;
    while (remaining > 0) {
        const std::size_t want = static_cast<std::size_t>(
            std::min<std::uintmax_t>(chunk_bytes, remaining));
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(want));
        if (in.bad() || static_cast<std::size_t>(in.gcount()) != want) {
            throw IoError("read error on input file: " + input.string());
        }
        remaining -= want;
        std::span<std::uint8_t> work(buf.data(), want);
        decrypt_blocks_inplace(work, sched);
        std::size_t keep = work.size();
        if (remaining == 0) {
            keep -= padding_len(work);
        }
        out.write(reinterpret_cast<const char*>(work.data()), static_cast<std::streamsize>(keep));
        if (!out) {
            throw IoError("write error on output file: " + output.string());
        }
    }
    return output;
}

std::filesystem::path sidecar_path(const std::filesystem::path& ciphertext_path) {
    std::filesystem::path p = ciphertext_path;
    p += ".meta";
    return p;
}

void write_sidecar(const std::filesystem::path& ciphertext_path, const SidecarInfo& info) {
    const auto path = sidecar_path(ciphertext_path);
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot write sidecar: " + path.string());
    }
    out << "variant=" << aes::variant_name(info.variant) << '\n'
        << "profile=" << keys::profile_name(info.profile) << '\n'
        << "padding=" << info.padding << '\n';
    if (!out) {
        throw IoError("failed writing sidecar: " + path.string());
    }
}

std::optional<SidecarInfo> read_sidecar(const std::filesystem::path& ciphertext_path) {
    std::ifstream in(sidecar_path(ciphertext_path));
    if (!in) {
        return std::nullopt;
    }
    SidecarInfo info;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "variant") {
            if (value == "128") info.variant = aes::Variant::A128;
            else if (value == "192") info.variant = aes::Variant::A192;
            else if (value == "256") info.variant = aes::Variant::A256;
            else return std::nullopt;
        } else if (key == "profile") {
            const auto p = keys::profile_from_name(value);
            if (!p) return std::nullopt;
            info.profile = *p;
        } else if (key == "padding") {
            info.padding = value;
        }
    }
    return info;
}

}  // namespace aesha3::modes
