// Compiled with -mavx2; only reached after a CPUID check in dispatch.cpp.

#include "kernels_internal.hpp"

#include <immintrin.h>

#include "relicpress/gf256.hpp"

namespace relicpress::kernels::avx2 {

namespace {

inline __m256i load(const std::uint8_t* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(std::uint8_t* p, __m256i v) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

}  // namespace

void gf_mul_add(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
    if (c == 0) return;
    // Split multiplication: c*x = c*(x & 0x0F) ^ c*(x & 0xF0), each half a 16-entry shuffle.
    alignas(16) std::uint8_t lo[16];
    alignas(16) std::uint8_t hi[16];
    for (unsigned i = 0; i < 16; ++i) {
        lo[i] = gf256::mul(c, static_cast<std::uint8_t>(i));
        hi[i] = gf256::mul(c, static_cast<std::uint8_t>(i << 4));
    }
    const __m256i lo_tbl = _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(lo)));
    const __m256i hi_tbl = _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(hi)));
    const __m256i nibble = _mm256_set1_epi8(0x0F);

    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i x = load(src + i);
        const __m256i l = _mm256_shuffle_epi8(lo_tbl, _mm256_and_si256(x, nibble));
        const __m256i h = _mm256_shuffle_epi8(hi_tbl, _mm256_and_si256(_mm256_srli_epi16(x, 4), nibble));
        store(dst + i, _mm256_xor_si256(load(dst + i), _mm256_xor_si256(l, h)));
    }
    for (; i < n; ++i) dst[i] ^= static_cast<std::uint8_t>(lo[src[i] & 0x0F] ^ hi[src[i] >> 4]);
}

std::size_t common_prefix(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i eq = _mm256_cmpeq_epi8(load(a + i), load(b + i));
        const auto mask = static_cast<std::uint32_t>(_mm256_movemask_epi8(eq));
        if (mask != 0xFFFFFFFFu) return i + static_cast<std::size_t>(__builtin_ctz(~mask));
    }
    while (i < n && a[i] == b[i]) ++i;
    return i;
}

std::size_t count_uniform_2x2(const std::uint8_t* upper, const std::uint8_t* lower, std::size_t n) {
    if (n < 2) return 0;
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 33 <= n; i += 32) {
        const __m256i u0 = load(upper + i);
        const __m256i u1 = load(upper + i + 1);
        const __m256i l0 = load(lower + i);
        const __m256i l1 = load(lower + i + 1);
        const __m256i eq = _mm256_and_si256(_mm256_and_si256(_mm256_cmpeq_epi8(u0, u1), _mm256_cmpeq_epi8(u0, l0)),
                                            _mm256_cmpeq_epi8(u0, l1));
        count += static_cast<std::size_t>(__builtin_popcount(static_cast<std::uint32_t>(_mm256_movemask_epi8(eq))));
    }
    for (; i + 1 < n; ++i) {
        const std::uint8_t v = upper[i];
        if (upper[i + 1] == v && lower[i] == v && lower[i + 1] == v) ++count;
    }
    return count;
}

void apply_mask(std::uint8_t* dst, const std::uint8_t* pattern, const std::uint8_t* reserved,
                std::size_t n) {
    const __m256i one = _mm256_set1_epi8(1);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i flip = _mm256_andnot_si256(load(reserved + i), _mm256_and_si256(load(pattern + i), one));
        store(dst + i, _mm256_xor_si256(load(dst + i), flip));
    }
    for (; i < n; ++i) dst[i] ^= pattern[i] & static_cast<std::uint8_t>(~reserved[i] & 1u);
}

std::size_t count_nonzero(const std::uint8_t* data, std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const auto zeros = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(load(data + i), zero)));
        count += 32 - static_cast<std::size_t>(__builtin_popcount(zeros));
    }
    for (; i < n; ++i) count += data[i] != 0;
    return count;
}

}  // namespace relicpress::kernels::avx2
