#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "relicpress/qr.hpp"

namespace relicpress::qr::detail {

// Function-module map and data placement order for one version.
struct Layout {
    int version = 0;
    int size = 0;
    std::vector<std::uint8_t> function;            // row-major, 1 = function module
    std::vector<std::pair<int, int>> data_order;  // (x, y) in codeword bit order
};

const Layout& layout_for(int version);

// Finders, separators, timing, alignment, dark module and version blocks.
void draw_function_patterns(QrMatrix& m);

std::uint32_t format_bits(Ecc ecc, int mask) noexcept;
std::uint32_t version_bits(int version) noexcept;
void draw_format_bits(QrMatrix& m, std::uint32_t bits);

// Coordinates of format bit i (0 = least significant) in each copy.
std::pair<int, int> format_position_primary(int i) noexcept;
std::pair<int, int> format_position_secondary(int size, int i) noexcept;

bool mask_bit(int mask, int x, int y) noexcept;

// mask pattern over the whole matrix, already cleared on function modules
const std::vector<std::uint8_t>& mask_pattern(int version, int mask);

// Codewords per block held back from correction in the smallest symbols.
inline int misdecode_protection(int version, Ecc ecc) noexcept {
    if (version == 1) return ecc == Ecc::L ? 3 : ecc == Ecc::M ? 2 : 1;
    if (version == 2 && ecc == Ecc::L) return 2;
    if (version == 3 && ecc == Ecc::L) return 1;
    return 0;
}

}  // namespace relicpress::qr::detail
