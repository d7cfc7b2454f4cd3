#include <charconv>
#include <optional>
#include <unordered_map>

#include "relicpress/binary_codec.hpp"
#include "relicpress/error.hpp"

namespace relicpress::codec {

using corpus::AgcStatement;
using corpus::StatementKind;

void BitWriter::put(std::uint32_t value, unsigned bits) {
    for (unsigned i = bits; i-- > 0;) {
        if (stream_.bit_length % 8 == 0) stream_.bytes.push_back(0);
        if ((value >> i) & 1u)
            stream_.bytes.back() |= static_cast<std::uint8_t>(0x80u >> (stream_.bit_length % 8));
        ++stream_.bit_length;
    }
}

BitStream BitWriter::finish() && { return std::move(stream_); }

std::uint32_t BitReader::get(unsigned bits) {
    if (bits > remaining()) throw Error(ErrorKind::TruncatedStream, "read past end of bit stream");
    std::uint32_t v = 0;
    for (unsigned i = 0; i < bits; ++i, ++pos_) {
        const unsigned bit = (stream_.bytes[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
        v = (v << 1) | bit;
    }
    return v;
}

namespace {

class StringIndex {
public:
    explicit StringIndex(std::vector<std::string>& table) : table_(table) {}

    void add(const std::string& s) {
        if (index_.contains(s)) return;
        if (table_.size() >= kMaxOperands)
            throw Error(ErrorKind::CodebookOverflow,
                        "more than " + std::to_string(kMaxOperands) + " distinct operands (at '" + s + "')");
        index_.emplace(s, static_cast<std::uint16_t>(table_.size()));
        table_.push_back(s);
    }

private:
    std::vector<std::string>& table_;
    std::unordered_map<std::string, std::uint16_t> index_;
};

std::string where(const AgcStatement& st) { return " (line " + std::to_string(st.line_no) + ")"; }

}  // namespace

Codebook Codebook::from_statements(std::span<const AgcStatement> statements) {
    Codebook book;
    StringIndex strings(book.operand_table);
    for (const auto& st : statements) {
        if (st.label) strings.add(*st.label);
        if (st.kind == StatementKind::Instruction && !book.opcode_codes.contains(st.opcode)) {
            if (book.opcode_codes.size() >= kMaxOpcodes)
                throw Error(ErrorKind::CodebookOverflow,
                            "more than " + std::to_string(kMaxOpcodes) + " distinct opcodes (at '" + st.opcode + "')");
            const auto code = static_cast<std::uint8_t>(book.opcode_codes.size());
            book.opcode_codes.emplace(st.opcode, code);
        }
        for (const auto& op : st.operands) strings.add(op);
        if (st.comment) strings.add(*st.comment);
    }
    return book;
}

std::string Codebook::opcode_name(std::uint8_t code) const {
    for (const auto& [name, c] : opcode_codes)
        if (c == code) return name;
    throw Error(ErrorKind::CodebookMiss, "opcode code " + std::to_string(code));
}

std::string Codebook::serialize() const {
    std::vector<const std::string*> by_code(opcode_codes.size());
    for (const auto& [name, code] : opcode_codes) by_code.at(code) = &name;
    std::string out = std::to_string(by_code.size()) + " " + std::to_string(operand_table.size()) + "\n";
    for (const auto* name : by_code) out += *name + "\n";
    for (const auto& s : operand_table) out += s + "\n";
    return out;
}

namespace {

std::size_t parse_count(std::string_view text, std::size_t& pos, char terminator) {
    std::size_t value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == last || *ptr != terminator)
        throw Error(ErrorKind::TruncatedStream, "malformed binary image header");
    pos = static_cast<std::size_t>(ptr - text.data()) + 1;
    return value;
}

std::string_view next_line(std::string_view text, std::size_t& pos) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) throw Error(ErrorKind::TruncatedStream, "codebook entry not terminated");
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    return line;
}

}  // namespace

Codebook Codebook::deserialize(std::string_view text, std::size_t* consumed) {
    std::size_t pos = 0;
    const std::size_t n_ops = parse_count(text, pos, ' ');
    const std::size_t n_strings = parse_count(text, pos, '\n');
    if (n_ops > kMaxOpcodes || n_strings > kMaxOperands)
        throw Error(ErrorKind::CodebookOverflow, "codebook header exceeds word layout");
    Codebook book;
    for (std::size_t i = 0; i < n_ops; ++i)
        book.opcode_codes.emplace(std::string(next_line(text, pos)), static_cast<std::uint8_t>(i));
    for (std::size_t i = 0; i < n_strings; ++i) book.operand_table.emplace_back(next_line(text, pos));
    if (consumed) *consumed = pos;
    return book;
}

BitStream encode_binary(std::span<const AgcStatement> statements, const Codebook& book) {
    if (book.operand_table.size() > kMaxOperands)
        throw Error(ErrorKind::CodebookOverflow, "operand table has " + std::to_string(book.operand_table.size()) + " entries");
    std::unordered_map<std::string_view, std::uint16_t> index;
    for (std::size_t i = 0; i < book.operand_table.size(); ++i)
        index.emplace(book.operand_table[i], static_cast<std::uint16_t>(i));

    auto lookup = [&](const std::string& s, const AgcStatement& st) -> std::uint16_t {
        auto it = index.find(s);
        if (it == index.end()) throw Error(ErrorKind::CodebookMiss, "operand '" + s + "'" + where(st));
        return it->second;
    };

    BitWriter w;
    auto word = [&](unsigned code, unsigned idx) { w.put((code << kIndexBits) | idx, kWordBits); };

    for (const auto& st : statements) {
        switch (st.kind) {
            case StatementKind::Blank:
                word(kLineCode, kNoOperand);
                break;
            case StatementKind::Comment:
                word(kLineCode, lookup(*st.comment, st));
                break;
            case StatementKind::Opaque:
                throw Error(ErrorKind::CodebookMiss, "opaque statement" + where(st));
            case StatementKind::Instruction: {
                auto it = book.opcode_codes.find(st.opcode);
                if (it == book.opcode_codes.end())
                    throw Error(ErrorKind::CodebookMiss, "opcode '" + st.opcode + "'" + where(st));
                if (st.label) word(kLabelCode, lookup(*st.label, st));
                word(it->second, st.operands.empty() ? kNoOperand : lookup(st.operands.front(), st));
                for (std::size_t i = 1; i < st.operands.size(); ++i) word(kOperandCode, lookup(st.operands[i], st));
                if (st.comment) word(kRemarkCode, lookup(*st.comment, st));
                break;
            }
        }
    }
    return std::move(w).finish();
}

std::vector<std::uint16_t> unpack_words(const BitStream& bits) {
    if (bits.bit_length > bits.bytes.size() * 8)
        throw Error(ErrorKind::TruncatedStream, "bit_length exceeds byte count");
    if (bits.bit_length % kWordBits != 0)
        throw Error(ErrorKind::TruncatedStream,
                    std::to_string(bits.bit_length) + " bits is not a whole number of 15-bit words");
    BitReader r(bits);
    std::vector<std::uint16_t> words;
    words.reserve(bits.bit_length / kWordBits);
    while (r.remaining() > 0) words.push_back(static_cast<std::uint16_t>(r.get(kWordBits)));
    return words;
}

std::vector<AgcStatement> decode_binary(const BitStream& bits, const Codebook& book) {
    std::vector<std::string> opcode_by_code(book.opcode_codes.size());
    for (const auto& [name, code] : book.opcode_codes) {
        if (code >= opcode_by_code.size()) throw Error(ErrorKind::CodebookMiss, "opcode codes are not dense");
        opcode_by_code[code] = name;
    }

    auto text_at = [&](std::uint16_t idx) -> const std::string& {
        if (idx >= book.operand_table.size())
            throw Error(ErrorKind::CodebookMiss, "operand index " + std::to_string(idx));
        return book.operand_table[idx];
    };

    struct Pending {
        std::optional<std::string> label;
        std::string opcode;
        std::vector<std::string> operands;
        std::optional<std::string> comment;
    };

    std::vector<AgcStatement> out;
    std::optional<Pending> current;
    std::optional<std::string> label;

    auto flush = [&] {
        if (!current) return;
        out.push_back(corpus::make_instruction(std::move(current->label), std::move(current->opcode),
                                               std::move(current->operands), std::move(current->comment)));
        current.reset();
    };

    for (const std::uint16_t w : unpack_words(bits)) {
        const auto code = static_cast<std::uint8_t>(w >> kIndexBits);
        const auto idx = static_cast<std::uint16_t>(w & kNoOperand);
        switch (code) {
            case kLabelCode:
                if (label) throw Error(ErrorKind::InvalidInput, "label word without a statement");
                flush();
                label = text_at(idx);
                break;
            case kOperandCode:
                if (!current) throw Error(ErrorKind::InvalidInput, "operand word without a statement");
                current->operands.push_back(text_at(idx));
                break;
            case kRemarkCode:
                if (!current || current->comment)
                    throw Error(ErrorKind::InvalidInput, "remark word without a statement");
                current->comment = text_at(idx);
                break;
            case kLineCode:
                if (label) throw Error(ErrorKind::InvalidInput, "label word without a statement");
                flush();
                out.push_back(idx == kNoOperand ? corpus::make_blank() : corpus::make_comment(text_at(idx)));
                break;
            default: {
                if (code >= opcode_by_code.size())
                    throw Error(ErrorKind::CodebookMiss, "opcode code " + std::to_string(code));
                flush();
                current.emplace();
                current->label = std::exchange(label, std::nullopt);
                current->opcode = opcode_by_code[code];
                if (idx != kNoOperand) current->operands.push_back(text_at(idx));
                break;
            }
        }
    }
    if (label) throw Error(ErrorKind::TruncatedStream, "label word at end of stream");
    flush();
    corpus::renumber(out);
    return out;
}

std::string pack_binary_image(const Codebook& book, const BitStream& bits) {
    std::string out = book.serialize();
    out += std::to_string(bits.bit_length) + "\n";
    out.append(bits.bytes.begin(), bits.bytes.end());
    return out;
}

std::pair<Codebook, BitStream> unpack_binary_image(std::string_view image) {
    std::size_t pos = 0;
    Codebook book = Codebook::deserialize(image, &pos);
    BitStream bits;
    bits.bit_length = parse_count(image, pos, '\n');
    const auto payload = image.substr(pos);
    if (payload.size() != (bits.bit_length + 7) / 8)
        throw Error(ErrorKind::TruncatedStream, "binary image holds " + std::to_string(payload.size()) +
                                                    " bytes for " + std::to_string(bits.bit_length) + " bits");
    bits.bytes.assign(payload.begin(), payload.end());
    return {std::move(book), std::move(bits)};
}

}  // namespace relicpress::codec
