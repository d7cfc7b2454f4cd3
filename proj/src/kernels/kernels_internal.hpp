#pragma once

#include <cstddef>
#include <cstdint>

namespace relicpress::kernels {

namespace scalar {
void gf_mul_add(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n);
std::size_t common_prefix(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
std::size_t count_uniform_2x2(const std::uint8_t* upper, const std::uint8_t* lower, std::size_t n);
void apply_mask(std::uint8_t* dst, const std::uint8_t* pattern, const std::uint8_t* reserved,
                std::size_t n);
std::size_t count_nonzero(const std::uint8_t* data, std::size_t n);
}  // namespace scalar

#if defined(RELICPRESS_HAVE_AVX2)
namespace avx2 {
void gf_mul_add(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n);
std::size_t common_prefix(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
std::size_t count_uniform_2x2(const std::uint8_t* upper, const std::uint8_t* lower, std::size_t n);
void apply_mask(std::uint8_t* dst, const std::uint8_t* pattern, const std::uint8_t* reserved,
                std::size_t n);
std::size_t count_nonzero(const std::uint8_t* data, std::size_t n);
}  // namespace avx2
#endif

}  // namespace relicpress::kernels
