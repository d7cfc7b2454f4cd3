#pragma once

// Raw DEFLATE (RFC 1951) without zlib or gzip framing, the format a browser's
// DecompressionStream accepts as "deflate-raw".

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relicpress::codec {

struct CompressedBlob {
    std::vector<std::uint8_t> data;
    std::size_t original_size = 0;

    bool operator==(const CompressedBlob&) const = default;
};

struct DeflateOptions {
    std::size_t max_chain = 4096;   // hash-chain probes per position
    std::size_t nice_length = 258;  // stop searching once a match this long is found
    bool lazy = true;
};

CompressedBlob compress(std::span<const std::uint8_t> data, const DeflateOptions& options = {});
CompressedBlob compress(std::string_view data, const DeflateOptions& options = {});

/// Inflates and checks the result length against blob.original_size.
std::vector<std::uint8_t> decompress(const CompressedBlob& blob);

/// Throws InflateError with the byte offset of the first malformed element.
std::vector<std::uint8_t> inflate_raw(std::span<const std::uint8_t> stream);

inline std::string to_string(std::span<const std::uint8_t> bytes) {
    return {bytes.begin(), bytes.end()};
}

inline std::span<const std::uint8_t> as_bytes(std::string_view s) noexcept {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace relicpress::codec
