#include <array>

#include "relicpress/error.hpp"
#include "relicpress/qr.hpp"

namespace relicpress::qr {

namespace {

// Indexed [ecc][version]; column 0 is unused.
constexpr std::array<std::array<std::int8_t, 41>, 4> kEccPerBlock{{
    {-1, 7,  10, 15, 20, 26, 18, 20, 24, 30, 18, 20, 24, 26, 30, 22, 24, 28, 30, 28, 28,
     28, 28, 30, 30, 26, 28, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30},
    {-1, 10, 16, 26, 18, 24, 16, 18, 22, 22, 26, 30, 22, 22, 24, 24, 28, 28, 26, 26, 26,
     26, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28},
    {-1, 13, 22, 18, 26, 18, 24, 18, 22, 20, 24, 28, 26, 24, 20, 30, 24, 28, 28, 26, 30,
     28, 30, 30, 30, 30, 28, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30},
    {-1, 17, 28, 22, 16, 22, 28, 26, 26, 24, 28, 24, 28, 22, 24, 24, 30, 28, 28, 26, 28,
     30, 24, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30},
}};

constexpr std::array<std::array<std::int8_t, 41>, 4> kNumBlocks{{
    {-1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 4,  4,  4,  4,  4,  6,  6,  6,  6,  7,  8,
     8,  9, 9, 10, 12, 12, 12, 13, 14, 15, 16, 17, 18, 19, 19, 20, 21, 22, 24, 25},
    {-1, 1, 1, 1, 2, 2, 4, 4, 4, 5, 5,  5,  8,  9,  9,  10, 10, 11, 13, 14, 16,
     17, 17, 18, 20, 21, 23, 25, 26, 28, 29, 31, 33, 35, 37, 38, 40, 43, 45, 47, 49},
    {-1, 1, 1, 2, 2, 4, 4, 6, 6, 8, 8,  8,  10, 12, 16, 12, 17, 16, 18, 21, 20,
     23, 23, 25, 27, 29, 34, 34, 35, 38, 40, 43, 45, 48, 51, 53, 56, 59, 62, 65, 68},
    {-1, 1, 1, 2, 4, 4, 4, 5, 6, 8, 8,  11, 11, 16, 16, 18, 16, 19, 21, 25, 25,
     25, 34, 30, 32, 35, 37, 40, 42, 45, 48, 51, 54, 57, 60, 63, 66, 70, 74, 77, 81},
}};

bool valid_version(int v) noexcept { return v >= kMinVersion && v <= kMaxVersion; }

}  // namespace

char ecc_letter(Ecc e) noexcept { return "LMQH"[static_cast<int>(e)]; }

std::optional<Ecc> parse_ecc(std::string_view s) noexcept {
    if (s.size() != 1) return std::nullopt;
    switch (s[0]) {
        case 'L': case 'l': return Ecc::L;
        case 'M': case 'm': return Ecc::M;
        case 'Q': case 'q': return Ecc::Q;
        case 'H': case 'h': return Ecc::H;
        default: return std::nullopt;
    }
}

int symbol_size(int version) noexcept { return 17 + 4 * version; }

int raw_data_modules(int v) noexcept {
    int result = (16 * v + 128) * v + 64;
    if (v >= 2) {
        const int na = v / 7 + 2;
        result -= (25 * na - 10) * na - 55;
        if (v >= 7) result -= 36;
    }
    return result;
}

int total_codewords(int version) noexcept { return raw_data_modules(version) / 8; }

int ecc_codewords_per_block(int version, Ecc ecc) noexcept {
    return kEccPerBlock[static_cast<std::size_t>(ecc)][static_cast<std::size_t>(version)];
}

int num_blocks(int version, Ecc ecc) noexcept {
    return kNumBlocks[static_cast<std::size_t>(ecc)][static_cast<std::size_t>(version)];
}

int data_codewords(int version, Ecc ecc) noexcept {
    return total_codewords(version) - ecc_codewords_per_block(version, ecc) * num_blocks(version, ecc);
}

int char_count_bits(int version) noexcept { return version <= 9 ? 8 : 16; }

std::vector<int> alignment_positions(int v) {
    if (v == 1) return {};
    const int na = v / 7 + 2;
    const int step = v == 32 ? 26 : (v * 4 + na * 2 + 1) / (na * 2 - 2) * 2;
    std::vector<int> out(static_cast<std::size_t>(na));
    out[0] = 6;
    for (int i = na - 1, pos = symbol_size(v) - 7; i >= 1; --i, pos -= step) out[static_cast<std::size_t>(i)] = pos;
    return out;
}

std::size_t capacity(int version, Ecc ecc) noexcept {
    if (!valid_version(version)) return 0;
    const int bits = data_codewords(version, ecc) * 8 - 4 - char_count_bits(version);
    return bits < 0 ? 0 : static_cast<std::size_t>(bits / 8);
}

int select_version(std::size_t payload_bytes, Ecc ecc) {
    for (int v = kMinVersion; v <= kMaxVersion; ++v)
        if (capacity(v, ecc) >= payload_bytes) return v;
    throw Error(ErrorKind::CapacityExceeded, std::to_string(payload_bytes) + " bytes exceed the version 40-" +
                                                 ecc_letter(ecc) + " capacity of " +
                                                 std::to_string(capacity(kMaxVersion, ecc)));
}

}  // namespace relicpress::qr
