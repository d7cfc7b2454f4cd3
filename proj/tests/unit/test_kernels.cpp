#include <random>
#include <vector>

#include "doctest.h"
#include "relicpress/gf256.hpp"
#include "relicpress/kernels.hpp"

using namespace relicpress;

namespace {

std::vector<std::uint8_t> random_bits(std::mt19937& rng, std::size_t n) {
    std::vector<std::uint8_t> v(n);
    for (auto& b : v) b = static_cast<std::uint8_t>(rng() & 1);
    return v;
}

std::vector<std::uint8_t> random_bytes(std::mt19937& rng, std::size_t n) {
    std::vector<std::uint8_t> v(n);
    for (auto& b : v) b = static_cast<std::uint8_t>(rng());
    return v;
}

// Shift-and-add multiplication, independent of the log tables.
std::uint8_t slow_mul(std::uint8_t a, std::uint8_t b) {
    unsigned r = 0;
    for (int i = 7; i >= 0; --i) {
        r <<= 1;
        if (r & 0x100) r ^= 0x11D;
        if ((b >> i) & 1) r ^= a;
    }
    return static_cast<std::uint8_t>(r);
}

}  // namespace

TEST_CASE("gf256 tables agree with carry-less multiplication") {
    for (unsigned a = 0; a < 256; ++a)
        for (unsigned b = 0; b < 256; ++b)
            REQUIRE(gf256::mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)) ==
                    slow_mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)));
    for (unsigned a = 1; a < 256; ++a)
        CHECK(gf256::mul(static_cast<std::uint8_t>(a), gf256::inv(static_cast<std::uint8_t>(a))) == 1);
}

TEST_CASE("scalar kernels match naive loops") {
    std::mt19937 rng(5);
    const auto& k = kernels::scalar_table();
    for (std::size_t n : {0u, 1u, 31u, 32u, 33u, 177u}) {
        auto dst = random_bytes(rng, n);
        const auto src = random_bytes(rng, n);
        auto expect = dst;
        for (std::size_t i = 0; i < n; ++i) expect[i] ^= slow_mul(0x53, src[i]);
        k.gf_mul_add(dst.data(), src.data(), 0x53, n);
        CHECK(dst == expect);

        const auto up = random_bits(rng, n);
        const auto lo = random_bits(rng, n);
        std::size_t blocks = 0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            blocks += up[i] == up[i + 1] && up[i] == lo[i] && up[i] == lo[i + 1];
        CHECK(k.count_uniform_2x2(up.data(), lo.data(), n) == blocks);
    }
}

TEST_CASE("avx2 kernels are equivalent to scalar") {
    const kernels::KernelTable* avx = kernels::avx2_table();
    if (!avx) {
        MESSAGE("AVX2 unavailable on this host; equivalence not exercised");
        return;
    }
    const auto& ref = kernels::scalar_table();
    std::mt19937 rng(99);
    for (int round = 0; round < 400; ++round) {
        const std::size_t n = rng() % 300;
        const auto c = static_cast<std::uint8_t>(rng());
        auto a1 = random_bytes(rng, n);
        auto a2 = a1;
        const auto src = random_bytes(rng, n);
        ref.gf_mul_add(a1.data(), src.data(), c, n);
        avx->gf_mul_add(a2.data(), src.data(), c, n);
        REQUIRE(a1 == a2);

        auto x = random_bytes(rng, n);
        auto y = x;
        if (n) y[rng() % n] ^= 1;
        if (round % 3 == 0) y = x;
        REQUIRE(ref.common_prefix(x.data(), y.data(), n) == avx->common_prefix(x.data(), y.data(), n));

        const auto up = random_bits(rng, n);
        const auto lo = round % 4 == 0 ? up : random_bits(rng, n);
        REQUIRE(ref.count_uniform_2x2(up.data(), lo.data(), n) == avx->count_uniform_2x2(up.data(), lo.data(), n));

        auto m1 = random_bits(rng, n);
        auto m2 = m1;
        const auto pat = random_bits(rng, n);
        const auto res = random_bits(rng, n);
        ref.apply_mask(m1.data(), pat.data(), res.data(), n);
        avx->apply_mask(m2.data(), pat.data(), res.data(), n);
        REQUIRE(m1 == m2);
        REQUIRE(ref.count_nonzero(m1.data(), n) == avx->count_nonzero(m1.data(), n));
    }
}

TEST_CASE("active table can be pinned") {
    const auto& before = kernels::active();
    kernels::set_active(kernels::scalar_table());
    CHECK(kernels::active().name == "scalar");
    kernels::set_active(before);
}
