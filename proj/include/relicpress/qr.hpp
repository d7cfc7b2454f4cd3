#pragma once

// QR Code Model 2 in byte mode: capacity tables, encoder, structural decoder
// and SVG/PGM rendering.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relicpress::qr {

enum class Ecc { L, M, Q, H };

inline constexpr int kMinVersion = 1;
inline constexpr int kMaxVersion = 40;

char ecc_letter(Ecc e) noexcept;
std::optional<Ecc> parse_ecc(std::string_view s) noexcept;

struct QrSymbolSpec {
    int version = 0;  // 0 selects the smallest version that fits
    Ecc ecc = Ecc::L;
    int module_px = 4;
    int quiet_zone = 4;
    int mask = -1;  // -1 picks the lowest-penalty mask
};

class QrMatrix {
public:
    QrMatrix() = default;
    explicit QrMatrix(int size) : size_(size), modules_(static_cast<std::size_t>(size) * size, 0) {}

    int size() const noexcept { return size_; }
    int version() const noexcept { return (size_ - 17) / 4; }

    // x is the column, y the row.
    bool dark(int x, int y) const noexcept { return modules_[index(x, y)] != 0; }
    void set(int x, int y, bool dark) noexcept { modules_[index(x, y)] = dark ? 1 : 0; }
    void flip(int x, int y) noexcept { modules_[index(x, y)] ^= 1; }

    std::uint8_t* row(int y) noexcept { return modules_.data() + static_cast<std::size_t>(y) * size_; }
    const std::uint8_t* row(int y) const noexcept { return modules_.data() + static_cast<std::size_t>(y) * size_; }
    const std::vector<std::uint8_t>& modules() const noexcept { return modules_; }
    std::uint8_t* data() noexcept { return modules_.data(); }

    bool operator==(const QrMatrix&) const = default;

private:
    std::size_t index(int x, int y) const noexcept { return static_cast<std::size_t>(y) * size_ + x; }

    int size_ = 0;
    std::vector<std::uint8_t> modules_;
};

// Codeword structure, all from the symbol tables.
int symbol_size(int version) noexcept;
int raw_data_modules(int version) noexcept;
int total_codewords(int version) noexcept;
int ecc_codewords_per_block(int version, Ecc ecc) noexcept;
int num_blocks(int version, Ecc ecc) noexcept;
int data_codewords(int version, Ecc ecc) noexcept;
int char_count_bits(int version) noexcept;
std::vector<int> alignment_positions(int version);

/// Largest byte-mode payload for one segment.
std::size_t capacity(int version, Ecc ecc) noexcept;

/// Smallest version with capacity >= payload_bytes; throws CapacityExceeded.
int select_version(std::size_t payload_bytes, Ecc ecc);

// Reed-Solomon over GF(256), polynomial 0x11D, generator roots a^0..a^(n-1).
std::vector<std::uint8_t> rs_generator(int degree);
std::vector<std::uint8_t> rs_remainder(std::span<const std::uint8_t> data, std::span<const std::uint8_t> generator);

struct EncodedSymbol {
    QrMatrix matrix;
    int version = 0;
    Ecc ecc = Ecc::L;
    int mask = 0;
    std::vector<int> penalties;  // per mask when chosen automatically
};

/// Throws CapacityExceeded when the payload does not fit the requested
/// version (or any version when spec.version == 0).
EncodedSymbol encode(std::span<const std::uint8_t> payload, const QrSymbolSpec& spec);
QrMatrix encode_symbol(std::span<const std::uint8_t> payload, const QrSymbolSpec& spec);

int penalty_score(const QrMatrix& m);

struct DecodedSymbol {
    std::vector<std::uint8_t> payload;
    int version = 0;
    Ecc ecc = Ecc::L;
    int mask = 0;
    std::size_t corrected_codewords = 0;
};

/// NotAQrSymbol for a bad size, damaged finders or unreadable format/version
/// information; CorruptSymbol when a block has more errors than it can fix or
/// the bit stream is malformed.
DecodedSymbol decode(const QrMatrix& m);
std::vector<std::uint8_t> decode_symbol(const QrMatrix& m);

enum class ImageFormat { Svg, Pgm };

/// Image side is (size + 2*quiet_zone) * module_px pixels, black on white.
/// PGM is binary P5 with header "P5\n<w> <h>\n255\n", 0 for dark, 255 for light.
std::string render(const QrMatrix& m, const QrSymbolSpec& spec, ImageFormat format);

/// Samples module centres. Throws InvalidInput on a malformed image or
/// dimensions that do not match a symbol for the given geometry.
QrMatrix read_pgm(std::string_view pgm, int module_px, int quiet_zone);

/// Rebuilds the matrix from a render(..., Svg) document.
QrMatrix read_svg(std::string_view svg, int module_px, int quiet_zone);

}  // namespace relicpress::qr
