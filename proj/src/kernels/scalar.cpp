#include "kernels_internal.hpp"

#include "relicpress/gf256.hpp"

namespace relicpress::kernels::scalar {

void gf_mul_add(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
    if (c == 0) return;
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= gf256::mul(c, src[i]);
}

std::size_t common_prefix(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    std::size_t i = 0;
    while (i < n && a[i] == b[i]) ++i;
    return i;
}

std::size_t count_uniform_2x2(const std::uint8_t* upper, const std::uint8_t* lower, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::uint8_t v = upper[i];
        if (upper[i + 1] == v && lower[i] == v && lower[i + 1] == v) ++count;
    }
    return count;
}

void apply_mask(std::uint8_t* dst, const std::uint8_t* pattern, const std::uint8_t* reserved,
                std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= pattern[i] & static_cast<std::uint8_t>(~reserved[i] & 1u);
}

std::size_t count_nonzero(const std::uint8_t* data, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) count += data[i] != 0;
    return count;
}

}  // namespace relicpress::kernels::scalar
