#pragma once

// 15-bit word packing of parsed statements.
//
// Every word is 5 bits of code followed by a 10-bit operand-table index,
// packed MSB first. Codes 0..27 are opcodes; the top four codes are control
// words:
//
//   31 LABEL    index = label string; attaches to the next statement
//   30 OPERAND  index = further operand of the current statement
//   29 LINE     index = comment-only line text, or 1023 for a blank line
//   28 REMARK   index = trailing comment of the current statement
//
// A statement's first word carries its opcode and first operand (1023 when it
// has none). The word layout is local to this project and unrelated to the
// real AGC instruction encoding.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relicpress/corpus.hpp"

namespace relicpress::codec {

inline constexpr unsigned kWordBits = 15;
inline constexpr unsigned kCodeBits = 5;
inline constexpr unsigned kIndexBits = 10;
inline constexpr std::uint16_t kNoOperand = 1023;
inline constexpr std::size_t kMaxOperands = 1023;  // index 1023 is reserved
inline constexpr std::uint8_t kMaxOpcodes = 28;

enum ControlCode : std::uint8_t {
    kRemarkCode = 28,
    kLineCode = 29,
    kOperandCode = 30,
    kLabelCode = 31,
};

struct BitStream {
    std::vector<std::uint8_t> bytes;
    std::size_t bit_length = 0;

    bool operator==(const BitStream&) const = default;
};

class BitWriter {
public:
    void put(std::uint32_t value, unsigned bits);
    BitStream finish() &&;
    std::size_t bit_length() const noexcept { return stream_.bit_length; }

private:
    BitStream stream_;
};

class BitReader {
public:
    explicit BitReader(const BitStream& stream) noexcept : stream_(stream) {}
    std::uint32_t get(unsigned bits);
    std::size_t remaining() const noexcept { return stream_.bit_length - pos_; }

private:
    const BitStream& stream_;
    std::size_t pos_ = 0;
};

struct Codebook {
    std::map<std::string, std::uint8_t, std::less<>> opcode_codes;
    std::vector<std::string> operand_table;

    /// Dense codes in first-appearance order over labels, opcodes, operands
    /// and comments. Throws CodebookOverflow past 28 opcodes or 1023 strings.
    static Codebook from_statements(std::span<const corpus::AgcStatement> statements);

    std::string opcode_name(std::uint8_t code) const;

    /// Compact text form: "<n_opcodes> <n_operands>\n" then one entry per line.
    std::string serialize() const;
    static Codebook deserialize(std::string_view text, std::size_t* consumed = nullptr);

    bool operator==(const Codebook&) const = default;
};

BitStream encode_binary(std::span<const corpus::AgcStatement> statements, const Codebook& book);

/// Statements come back in canonical single-space form, numbered from 1.
std::vector<corpus::AgcStatement> decode_binary(const BitStream& bits, const Codebook& book);

std::vector<std::uint16_t> unpack_words(const BitStream& bits);

/// Codebook text followed by "<bit_length>\n" and the packed bytes.
std::string pack_binary_image(const Codebook& book, const BitStream& bits);
std::pair<Codebook, BitStream> unpack_binary_image(std::string_view image);

}  // namespace relicpress::codec
