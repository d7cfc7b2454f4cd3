#include "layout.hpp"

#include <array>
#include <cstdlib>
#include <mutex>

namespace relicpress::qr::detail {

namespace {

void set_function(QrMatrix& m, std::vector<std::uint8_t>* fn, int x, int y, bool dark) {
    m.set(x, y, dark);
    if (fn) (*fn)[static_cast<std::size_t>(y) * m.size() + x] = 1;
}

void draw_finder(QrMatrix& m, std::vector<std::uint8_t>* fn, int cx, int cy) {
    for (int dy = -4; dy <= 4; ++dy) {
        for (int dx = -4; dx <= 4; ++dx) {
            const int x = cx + dx;
            const int y = cy + dy;
            if (x < 0 || y < 0 || x >= m.size() || y >= m.size()) continue;
            const int dist = std::max(std::abs(dx), std::abs(dy));
            set_function(m, fn, x, y, dist != 2 && dist != 4);
        }
    }
}

void draw_alignment(QrMatrix& m, std::vector<std::uint8_t>* fn, int cx, int cy) {
    for (int dy = -2; dy <= 2; ++dy)
        for (int dx = -2; dx <= 2; ++dx)
            set_function(m, fn, cx + dx, cy + dy, std::max(std::abs(dx), std::abs(dy)) != 1);
}

void draw_all(QrMatrix& m, std::vector<std::uint8_t>* fn) {
    const int size = m.size();
    const int version = m.version();
    for (int i = 0; i < size; ++i) {
        set_function(m, fn, 6, i, i % 2 == 0);
        set_function(m, fn, i, 6, i % 2 == 0);
    }
    draw_finder(m, fn, 3, 3);
    draw_finder(m, fn, size - 4, 3);
    draw_finder(m, fn, 3, size - 4);

    const auto pos = alignment_positions(version);
    const std::size_t n = pos.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!((i == 0 && j == 0) || (i == 0 && j == n - 1) || (i == n - 1 && j == 0)))
                draw_alignment(m, fn, pos[i], pos[j]);

    // Format areas are reserved here and written after masking.
    for (int i = 0; i < 15; ++i) {
        const auto [x1, y1] = format_position_primary(i);
        const auto [x2, y2] = format_position_secondary(size, i);
        set_function(m, fn, x1, y1, false);
        set_function(m, fn, x2, y2, false);
    }
    set_function(m, fn, 8, size - 8, true);

    if (version >= 7) {
        const std::uint32_t bits = version_bits(version);
        for (int i = 0; i < 18; ++i) {
            const bool bit = (bits >> i) & 1u;
            const int a = size - 11 + i % 3;
            const int b = i / 3;
            set_function(m, fn, a, b, bit);
            set_function(m, fn, b, a, bit);
        }
    }
}

Layout build_layout(int version) {
    Layout l;
    l.version = version;
    l.size = symbol_size(version);
    l.function.assign(static_cast<std::size_t>(l.size) * l.size, 0);
    QrMatrix scratch(l.size);
    draw_all(scratch, &l.function);

    l.data_order.reserve(static_cast<std::size_t>(raw_data_modules(version)));
    for (int right = l.size - 1; right >= 1; right -= 2) {
        if (right == 6) right = 5;
        const bool upward = ((right + 1) & 2) == 0;
        for (int vert = 0; vert < l.size; ++vert) {
            const int y = upward ? l.size - 1 - vert : vert;
            for (int j = 0; j < 2; ++j) {
                const int x = right - j;
                if (!l.function[static_cast<std::size_t>(y) * l.size + x]) l.data_order.emplace_back(x, y);
            }
        }
    }
    return l;
}

struct Cache {
    std::array<std::once_flag, kMaxVersion + 1> layout_once;
    std::array<Layout, kMaxVersion + 1> layouts;
    std::array<std::array<std::once_flag, 8>, kMaxVersion + 1> mask_once;
    std::array<std::array<std::vector<std::uint8_t>, 8>, kMaxVersion + 1> masks;
};

Cache& cache() {
    static Cache c;
    return c;
}

}  // namespace

const Layout& layout_for(int version) {
    auto& c = cache();
    const auto v = static_cast<std::size_t>(version);
    std::call_once(c.layout_once[v], [&] { c.layouts[v] = build_layout(version); });
    return c.layouts[v];
}

void draw_function_patterns(QrMatrix& m) { draw_all(m, nullptr); }

std::uint32_t format_bits(Ecc ecc, int mask) noexcept {
    static constexpr std::uint32_t kEccBits[] = {1, 0, 3, 2};  // L M Q H
    const std::uint32_t data = (kEccBits[static_cast<int>(ecc)] << 3) | static_cast<std::uint32_t>(mask);
    std::uint32_t rem = data;
    for (int i = 0; i < 10; ++i) rem = (rem << 1) ^ ((rem >> 9) * 0x537u);
    return ((data << 10) | rem) ^ 0x5412u;
}

std::uint32_t version_bits(int version) noexcept {
    std::uint32_t rem = static_cast<std::uint32_t>(version);
    for (int i = 0; i < 12; ++i) rem = (rem << 1) ^ ((rem >> 11) * 0x1F25u);
    return (static_cast<std::uint32_t>(version) << 12) | rem;
}

std::pair<int, int> format_position_primary(int i) noexcept {
    if (i <= 5) return {8, i};
    if (i == 6) return {8, 7};
    if (i == 7) return {8, 8};
    if (i == 8) return {7, 8};
    return {14 - i, 8};
}

std::pair<int, int> format_position_secondary(int size, int i) noexcept {
    if (i <= 7) return {size - 1 - i, 8};
    return {8, size - 15 + i};
}

void draw_format_bits(QrMatrix& m, std::uint32_t bits) {
    for (int i = 0; i < 15; ++i) {
        const bool bit = (bits >> i) & 1u;
        const auto [x1, y1] = format_position_primary(i);
        const auto [x2, y2] = format_position_secondary(m.size(), i);
        m.set(x1, y1, bit);
        m.set(x2, y2, bit);
    }
    m.set(8, m.size() - 8, true);
}

bool mask_bit(int mask, int x, int y) noexcept {
    switch (mask) {
        case 0: return (x + y) % 2 == 0;
        case 1: return y % 2 == 0;
        case 2: return x % 3 == 0;
        case 3: return (x + y) % 3 == 0;
        case 4: return (x / 3 + y / 2) % 2 == 0;
        case 5: return x * y % 2 + x * y % 3 == 0;
        case 6: return (x * y % 2 + x * y % 3) % 2 == 0;
        case 7: return ((x + y) % 2 + x * y % 3) % 2 == 0;
        default: return false;
    }
}

const std::vector<std::uint8_t>& mask_pattern(int version, int mask) {
    auto& c = cache();
    const auto v = static_cast<std::size_t>(version);
    const auto k = static_cast<std::size_t>(mask);
    std::call_once(c.mask_once[v][k], [&] {
        const auto& l = layout_for(version);
        auto& p = c.masks[v][k];
        p.assign(l.function.size(), 0);
        for (int y = 0; y < l.size; ++y)
            for (int x = 0; x < l.size; ++x) {
                const auto idx = static_cast<std::size_t>(y) * l.size + x;
                p[idx] = !l.function[idx] && mask_bit(mask, x, y);
            }
    });
    return c.masks[v][k];
}

}  // namespace relicpress::qr::detail
