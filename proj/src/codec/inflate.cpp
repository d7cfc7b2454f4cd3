#include <array>

#include "deflate_tables.hpp"
#include "relicpress/deflate.hpp"
#include "relicpress/error.hpp"

namespace relicpress::codec {

namespace {

using namespace detail;

class BitInput {
public:
    explicit BitInput(std::span<const std::uint8_t> in) noexcept : in_(in) {}

    unsigned bits(unsigned n) {
        std::uint32_t v = bitbuf_;
        while (bitcnt_ < n) {
            if (pos_ >= in_.size()) throw InflateError(pos_, "unexpected end of stream");
            v |= static_cast<std::uint32_t>(in_[pos_++]) << bitcnt_;
            bitcnt_ += 8;
        }
        bitbuf_ = v >> n;
        bitcnt_ -= n;
        return v & ((1u << n) - 1u);
    }

    void align() noexcept {
        bitbuf_ = 0;
        bitcnt_ = 0;
    }

    std::uint8_t byte() {
        if (pos_ >= in_.size()) throw InflateError(pos_, "unexpected end of stream");
        return in_[pos_++];
    }

    std::size_t offset() const noexcept { return pos_; }

private:
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
    std::uint32_t bitbuf_ = 0;
    unsigned bitcnt_ = 0;
};

// Canonical Huffman decoding table in count/symbol form.
struct Huffman {
    std::array<std::uint16_t, kMaxBits + 1> count{};
    std::array<std::uint16_t, 288> symbol{};
};

// Returns the number of unused codes: 0 for complete, >0 incomplete; throws
// when oversubscribed. A lone code of length 1 is tolerated as incomplete.
int build(Huffman& h, std::span<const std::uint8_t> lengths, std::size_t at) {
    h.count.fill(0);
    for (auto len : lengths) ++h.count[len];
    if (h.count[0] == lengths.size()) return 0;
    int left = 1;
    for (unsigned len = 1; len <= kMaxBits; ++len) {
        left <<= 1;
        left -= h.count[len];
        if (left < 0) throw InflateError(at, "oversubscribed Huffman code");
    }
    std::array<std::uint16_t, kMaxBits + 1> offs{};
    for (unsigned len = 1; len < kMaxBits; ++len) offs[len + 1] = static_cast<std::uint16_t>(offs[len] + h.count[len]);
    for (std::size_t sym = 0; sym < lengths.size(); ++sym)
        if (lengths[sym] != 0) h.symbol[offs[lengths[sym]]++] = static_cast<std::uint16_t>(sym);
    return left;
}

void require_usable(const Huffman& h, int left, std::size_t n, std::size_t at, const char* what) {
    std::size_t used = 0;
    for (unsigned len = 1; len <= kMaxBits; ++len) used += h.count[len];
    (void)n;
    if (left > 0 && !(used == 1 && h.count[1] == 1))
        throw InflateError(at, std::string("incomplete ") + what + " code");
}

unsigned decode(BitInput& in, const Huffman& h) {
    int code = 0;
    int first = 0;
    int index = 0;
    for (unsigned len = 1; len <= kMaxBits; ++len) {
        code |= static_cast<int>(in.bits(1));
        const int count = h.count[len];
        if (code - count < first) return h.symbol[static_cast<std::size_t>(index + (code - first))];
        index += count;
        first += count;
        first <<= 1;
        code <<= 1;
    }
    throw InflateError(in.offset(), "invalid Huffman code");
}

void inflate_codes(BitInput& in, std::vector<std::uint8_t>& out, const Huffman& lit, const Huffman& dist) {
    while (true) {
        const unsigned sym = decode(in, lit);
        if (sym < 256) {
            out.push_back(static_cast<std::uint8_t>(sym));
            continue;
        }
        if (sym == kEndOfBlock) return;
        const unsigned li = sym - 257;
        if (li >= kLengthBase.size()) throw InflateError(in.offset(), "invalid length symbol " + std::to_string(sym));
        const std::size_t length = kLengthBase[li] + in.bits(kLengthExtra[li]);
        const unsigned ds = decode(in, dist);
        if (ds >= kDistBase.size()) throw InflateError(in.offset(), "invalid distance symbol " + std::to_string(ds));
        const std::size_t distance = kDistBase[ds] + in.bits(kDistExtra[ds]);
        if (distance > out.size())
            throw InflateError(in.offset(), "distance " + std::to_string(distance) + " reaches before start of output");
        const std::size_t from = out.size() - distance;
        for (std::size_t k = 0; k < length; ++k) out.push_back(out[from + k]);
    }
}

void inflate_stored(BitInput& in, std::vector<std::uint8_t>& out) {
    in.align();
    const std::size_t at = in.offset();
    unsigned len = in.byte();
    len |= static_cast<unsigned>(in.byte()) << 8;
    unsigned nlen = in.byte();
    nlen |= static_cast<unsigned>(in.byte()) << 8;
    if (len != (~nlen & 0xFFFFu)) throw InflateError(at, "stored block length check failed");
    for (unsigned i = 0; i < len; ++i) out.push_back(in.byte());
}

void inflate_fixed(BitInput& in, std::vector<std::uint8_t>& out) {
    static const auto tables = [] {
        std::pair<Huffman, Huffman> t;
        constexpr auto lit = fixed_literal_lengths();
        constexpr auto dist = fixed_distance_lengths();
        build(t.first, lit, 0);
        build(t.second, dist, 0);
        return t;
    }();
    inflate_codes(in, out, tables.first, tables.second);
}

void inflate_dynamic(BitInput& in, std::vector<std::uint8_t>& out) {
    const std::size_t header_at = in.offset();
    const unsigned nlen = in.bits(5) + 257;
    const unsigned ndist = in.bits(5) + 1;
    const unsigned ncode = in.bits(4) + 4;
    if (nlen > 286 || ndist > 30) throw InflateError(header_at, "too many length or distance codes");

    std::array<std::uint8_t, 19> cl_lengths{};
    for (unsigned i = 0; i < ncode; ++i) cl_lengths[kCodeLengthOrder[i]] = static_cast<std::uint8_t>(in.bits(3));
    Huffman cl;
    if (build(cl, cl_lengths, in.offset()) != 0) throw InflateError(in.offset(), "incomplete code-length code");

    std::array<std::uint8_t, 316> lengths{};
    unsigned index = 0;
    while (index < nlen + ndist) {
        unsigned sym = decode(in, cl);
        if (sym < 16) {
            lengths[index++] = static_cast<std::uint8_t>(sym);
            continue;
        }
        std::uint8_t value = 0;
        unsigned repeat = 0;
        if (sym == 16) {
            if (index == 0) throw InflateError(in.offset(), "repeat with no previous length");
            value = lengths[index - 1];
            repeat = 3 + in.bits(2);
        } else if (sym == 17) {
            repeat = 3 + in.bits(3);
        } else {
            repeat = 11 + in.bits(7);
        }
        if (index + repeat > nlen + ndist) throw InflateError(in.offset(), "code lengths overrun");
        while (repeat-- > 0) lengths[index++] = value;
    }
    if (lengths[kEndOfBlock] == 0) throw InflateError(in.offset(), "missing end-of-block code");

    Huffman lit;
    Huffman dist;
    const std::span<const std::uint8_t> all(lengths.data(), nlen + ndist);
    const int lit_left = build(lit, all.first(nlen), in.offset());
    require_usable(lit, lit_left, nlen, in.offset(), "literal/length");
    const int dist_left = build(dist, all.subspan(nlen), in.offset());
    require_usable(dist, dist_left, ndist, in.offset(), "distance");
    inflate_codes(in, out, lit, dist);
}

}  // namespace

std::vector<std::uint8_t> inflate_raw(std::span<const std::uint8_t> stream) {
    BitInput in(stream);
    std::vector<std::uint8_t> out;
    bool last = false;
    while (!last) {
        const std::size_t at = in.offset();
        last = in.bits(1) != 0;
        switch (in.bits(2)) {
            case 0: inflate_stored(in, out); break;
            case 1: inflate_fixed(in, out); break;
            case 2: inflate_dynamic(in, out); break;
            default: throw InflateError(at, "invalid block type");
        }
    }
    return out;
}

std::vector<std::uint8_t> decompress(const CompressedBlob& blob) {
    auto out = inflate_raw(blob.data);
    if (out.size() != blob.original_size)
        throw InflateError(blob.data.size(), "inflated " + std::to_string(out.size()) + " bytes, expected " +
                                                 std::to_string(blob.original_size));
    return out;
}

}  // namespace relicpress::codec
