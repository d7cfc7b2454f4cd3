#pragma once

// Data-parallel inner loops shared by the codec and the QR encoder.
//
// Each kernel has a scalar reference implementation and, on x86-64 builds, an
// AVX2 variant. The active table is picked once at startup from CPUID and can
// be pinned with RELICPRESS_KERNELS=scalar|avx2. Both variants must produce
// identical results; tests/unit/test_kernels.cpp checks this on random input.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace relicpress::kernels {

struct KernelTable {
    std::string_view name;

    // dst[i] ^= c * src[i] in GF(256) with the QR field polynomial 0x11D.
    void (*gf_mul_add)(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n);

    // Length of the common prefix of a[0..n) and b[0..n).
    std::size_t (*common_prefix)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);

    // Count of i in [0, n-1) where upper[i], upper[i+1], lower[i], lower[i+1]
    // are all equal. Rows hold 0/1 module values.
    std::size_t (*count_uniform_2x2)(const std::uint8_t* upper, const std::uint8_t* lower,
                                     std::size_t n);

    // dst[i] ^= pattern[i] & ~reserved[i], all operands 0/1.
    void (*apply_mask)(std::uint8_t* dst, const std::uint8_t* pattern,
                       const std::uint8_t* reserved, std::size_t n);

    std::size_t (*count_nonzero)(const std::uint8_t* data, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

// nullptr when the build has no AVX2 variant or the CPU lacks AVX2.
const KernelTable* avx2_table() noexcept;

const KernelTable& active() noexcept;

// Replaces the active table; intended for tests and benchmarks.
void set_active(const KernelTable& table) noexcept;

inline void gf_mul_add(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
                       std::uint8_t c) {
    active().gf_mul_add(dst.data(), src.data(), c, dst.size() < src.size() ? dst.size() : src.size());
}

inline std::size_t common_prefix(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    return active().common_prefix(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

}  // namespace relicpress::kernels
