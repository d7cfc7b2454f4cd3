#include "relicpress/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace relicpress::kernels {

namespace {

constexpr KernelTable kScalar{
    "scalar",
    &scalar::gf_mul_add,
    &scalar::common_prefix,
    &scalar::count_uniform_2x2,
    &scalar::apply_mask,
    &scalar::count_nonzero,
};

#if defined(RELICPRESS_HAVE_AVX2)
constexpr KernelTable kAvx2{
    "avx2",
    &avx2::gf_mul_add,
    &avx2::common_prefix,
    &avx2::count_uniform_2x2,
    &avx2::apply_mask,
    &avx2::count_nonzero,
};
#endif

const KernelTable* detect() noexcept {
    const char* forced = std::getenv("RELICPRESS_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") return &kScalar;
    if (const KernelTable* t = avx2_table()) return t;
    return &kScalar;
}

std::atomic<const KernelTable*>& slot() noexcept {
    static std::atomic<const KernelTable*> table{detect()};
    return table;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(RELICPRESS_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() noexcept { return *slot().load(std::memory_order_acquire); }

void set_active(const KernelTable& table) noexcept { slot().store(&table, std::memory_order_release); }

}  // namespace relicpress::kernels
