#include <algorithm>
#include <array>
#include <functional>
#include <numeric>

#include "deflate_tables.hpp"
#include "relicpress/deflate.hpp"
#include "relicpress/kernels.hpp"

namespace relicpress::codec {

namespace {

using namespace detail;

constexpr std::size_t kMinMatch = 3;
constexpr std::size_t kMaxMatch = 258;
constexpr std::size_t kHashBits = 15;
constexpr std::size_t kBlockTokens = 16384;
constexpr std::size_t kMaxStored = 65535;

struct Token {
    std::uint16_t length;    // 0 for a literal
    std::uint16_t value;     // literal byte or match distance
};

unsigned length_symbol(std::size_t length) {
    const auto it = std::upper_bound(kLengthBase.begin(), kLengthBase.end(), length);
    return static_cast<unsigned>(it - kLengthBase.begin() - 1);
}

unsigned distance_symbol(std::size_t distance) {
    const auto it = std::upper_bound(kDistBase.begin(), kDistBase.end(), distance);
    return static_cast<unsigned>(it - kDistBase.begin() - 1);
}

class MatchFinder {
public:
    MatchFinder(std::span<const std::uint8_t> data, const DeflateOptions& opt)
        : data_(data), opt_(opt), head_(std::size_t{1} << kHashBits, -1), prev_(data.size(), -1) {}

    void insert(std::size_t pos) {
        if (pos + kMinMatch > data_.size()) return;
        const std::size_t h = hash(pos);
        prev_[pos] = head_[h];
        head_[h] = static_cast<std::int32_t>(pos);
    }

    // Longest match starting at pos against earlier positions in the window.
    std::pair<std::size_t, std::size_t> longest(std::size_t pos) const {
        std::size_t best_len = 0;
        std::size_t best_dist = 0;
        if (pos + kMinMatch > data_.size()) return {0, 0};
        const std::size_t limit = std::min(kMaxMatch, data_.size() - pos);
        std::int32_t cand = head_[hash(pos)];
        std::size_t chain = opt_.max_chain;
        const auto& k = kernels::active();
        while (cand >= 0 && chain-- > 0) {
            const auto c = static_cast<std::size_t>(cand);
            if (pos - c > kWindow) break;
            if (c < pos && data_[c + best_len] == data_[pos + best_len]) {
                const std::size_t len = k.common_prefix(data_.data() + c, data_.data() + pos, limit);
                if (len > best_len) {
                    best_len = len;
                    best_dist = pos - c;
                    if (len >= opt_.nice_length || len == limit) break;
                }
            }
            cand = prev_[c];
        }
        if (best_len < kMinMatch) return {0, 0};
        return {best_len, best_dist};
    }

private:
    std::size_t hash(std::size_t pos) const noexcept {
        const std::uint32_t v = (std::uint32_t{data_[pos]} << 16) | (std::uint32_t{data_[pos + 1]} << 8) | data_[pos + 2];
        return (v * 2654435761u) >> (32 - kHashBits);
    }

    std::span<const std::uint8_t> data_;
    const DeflateOptions& opt_;
    std::vector<std::int32_t> head_;
    std::vector<std::int32_t> prev_;
};

std::vector<Token> lz77(std::span<const std::uint8_t> data, const DeflateOptions& opt) {
    std::vector<Token> tokens;
    MatchFinder finder(data, opt);
    std::size_t pos = 0;
    while (pos < data.size()) {
        auto [len, dist] = finder.longest(pos);
        if (opt.lazy && len >= kMinMatch && len < opt.nice_length && pos + 1 < data.size()) {
            finder.insert(pos);
            auto [next_len, next_dist] = finder.longest(pos + 1);
            if (next_len > len) {
                tokens.push_back({0, data[pos]});
                ++pos;
                len = next_len;
                dist = next_dist;
                // Position pos is already inserted for the next round.
                for (std::size_t i = 0; i < len; ++i) finder.insert(pos + i);
                tokens.push_back({static_cast<std::uint16_t>(len), static_cast<std::uint16_t>(dist)});
                pos += len;
                continue;
            }
            for (std::size_t i = 1; i < len; ++i) finder.insert(pos + i);
            tokens.push_back({static_cast<std::uint16_t>(len), static_cast<std::uint16_t>(dist)});
            pos += len;
            continue;
        }
        if (len >= kMinMatch) {
            for (std::size_t i = 0; i < len; ++i) finder.insert(pos + i);
            tokens.push_back({static_cast<std::uint16_t>(len), static_cast<std::uint16_t>(dist)});
            pos += len;
        } else {
            finder.insert(pos);
            tokens.push_back({0, data[pos]});
            ++pos;
        }
    }
    return tokens;
}

// Package-merge: optimal code lengths for `freq` with no code longer than
// `limit`. Symbols with zero frequency get length 0.
std::vector<std::uint8_t> limited_lengths(std::span<const std::uint32_t> freq, unsigned limit) {
    std::vector<std::uint8_t> lengths(freq.size(), 0);
    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < freq.size(); ++i)
        if (freq[i] > 0) used.push_back(i);
    if (used.empty()) return lengths;
    if (used.size() == 1) {
        lengths[used[0]] = 1;
        return lengths;
    }
    std::stable_sort(used.begin(), used.end(), [&](std::size_t a, std::size_t b) { return freq[a] < freq[b]; });

    struct Node {
        std::uint64_t weight;
        int symbol;  // >= 0 for a leaf
        std::uint32_t left;
        std::uint32_t right;
    };
    std::vector<std::vector<Node>> levels;
    std::vector<Node> leaves;
    for (std::size_t s : used) leaves.push_back({freq[s], static_cast<int>(s), 0, 0});
    levels.push_back(leaves);
    for (unsigned level = 1; level < limit; ++level) {
        const auto& prev = levels.back();
        std::vector<Node> packages;
        for (std::size_t i = 0; i + 1 < prev.size(); i += 2)
            packages.push_back({prev[i].weight + prev[i + 1].weight, -1, static_cast<std::uint32_t>(i),
                                static_cast<std::uint32_t>(i + 1)});
        std::vector<Node> merged;
        merged.reserve(leaves.size() + packages.size());
        std::merge(leaves.begin(), leaves.end(), packages.begin(), packages.end(), std::back_inserter(merged),
                   [](const Node& a, const Node& b) { return a.weight < b.weight; });
        levels.push_back(std::move(merged));
    }

    std::function<void(std::size_t, std::size_t)> count = [&](std::size_t level, std::size_t idx) {
        const Node& n = levels[level][idx];
        if (n.symbol >= 0) {
            ++lengths[static_cast<std::size_t>(n.symbol)];
            return;
        }
        count(level - 1, n.left);
        count(level - 1, n.right);
    };
    const std::size_t take = 2 * used.size() - 2;
    for (std::size_t i = 0; i < take; ++i) count(levels.size() - 1, i);
    return lengths;
}

std::vector<std::uint16_t> canonical_codes(std::span<const std::uint8_t> lengths) {
    std::array<std::uint16_t, kMaxBits + 2> bl_count{};
    for (auto l : lengths) ++bl_count[l];
    bl_count[0] = 0;
    std::array<std::uint16_t, kMaxBits + 2> next{};
    std::uint16_t code = 0;
    for (unsigned bits = 1; bits <= kMaxBits; ++bits) {
        code = static_cast<std::uint16_t>((code + bl_count[bits - 1]) << 1);
        next[bits] = code;
    }
    std::vector<std::uint16_t> codes(lengths.size(), 0);
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (lengths[i] == 0) continue;
        // Reverse so the LSB-first writer emits the code MSB first.
        const std::uint16_t c = next[lengths[i]]++;
        std::uint16_t r = 0;
        for (unsigned b = 0; b < lengths[i]; ++b) r = static_cast<std::uint16_t>(r | (((c >> b) & 1u) << (lengths[i] - 1 - b)));
        codes[i] = r;
    }
    return codes;
}

class BitOutput {
public:
    void put(std::uint32_t value, unsigned bits) {
        for (unsigned i = 0; i < bits; ++i) {
            if (bitcnt_ == 0) out_.push_back(0);
            out_.back() |= static_cast<std::uint8_t>(((value >> i) & 1u) << bitcnt_);
            bitcnt_ = (bitcnt_ + 1) % 8;
        }
    }
    void align() noexcept { bitcnt_ = 0; }
    void byte(std::uint8_t b) {
        out_.push_back(b);
        bitcnt_ = 0;
    }
    std::vector<std::uint8_t> take() && { return std::move(out_); }

private:
    std::vector<std::uint8_t> out_;
    unsigned bitcnt_ = 0;
};

struct CodeLengthRun {
    std::uint8_t symbol;  // 0..18
    std::uint8_t extra;
};

std::vector<CodeLengthRun> rle_lengths(std::span<const std::uint8_t> lengths) {
    std::vector<CodeLengthRun> runs;
    std::size_t i = 0;
    while (i < lengths.size()) {
        const std::uint8_t v = lengths[i];
        std::size_t run = 1;
        while (i + run < lengths.size() && lengths[i + run] == v) ++run;
        std::size_t left = run;
        if (v == 0) {
            while (left >= 11) {
                const std::size_t n = std::min<std::size_t>(left, 138);
                runs.push_back({18, static_cast<std::uint8_t>(n - 11)});
                left -= n;
            }
            if (left >= 3) {
                runs.push_back({17, static_cast<std::uint8_t>(left - 3)});
                left = 0;
            }
        } else {
            runs.push_back({v, 0});
            --left;
            while (left >= 3) {
                const std::size_t n = std::min<std::size_t>(left, 6);
                runs.push_back({16, static_cast<std::uint8_t>(n - 3)});
                left -= n;
            }
        }
        while (left-- > 0) runs.push_back({v, 0});
        i += run;
    }
    return runs;
}

constexpr unsigned code_length_extra_bits(unsigned symbol) {
    return symbol == 16 ? 2 : symbol == 17 ? 3 : symbol == 18 ? 7 : 0;
}

struct DynamicHeader {
    std::vector<std::uint8_t> lit_lengths;
    std::vector<std::uint8_t> dist_lengths;
    std::vector<std::uint8_t> cl_lengths;
    std::vector<CodeLengthRun> runs;
    unsigned hlit = 0;
    unsigned hdist = 0;
    unsigned hclen = 0;

    std::size_t header_bits() const {
        std::size_t bits = 5 + 5 + 4 + 3 * hclen;
        for (const auto& r : runs) bits += cl_lengths[r.symbol] + code_length_extra_bits(r.symbol);
        return bits;
    }
};

// Makes sure at least two symbols are coded so every inflater sees a
// complete prefix code.
void ensure_two(std::vector<std::uint32_t>& freq) {
    std::size_t used = 0;
    for (auto f : freq) used += f > 0;
    for (std::size_t i = 0; used < 2 && i < freq.size(); ++i) {
        if (freq[i] == 0) {
            freq[i] = 1;
            ++used;
        }
    }
}

DynamicHeader plan_dynamic(std::vector<std::uint32_t> lit_freq, std::vector<std::uint32_t> dist_freq) {
    ensure_two(lit_freq);
    ensure_two(dist_freq);
    DynamicHeader h;
    h.lit_lengths = limited_lengths(lit_freq, kMaxBits);
    h.dist_lengths = limited_lengths(dist_freq, kMaxBits);
    h.hlit = 286;
    while (h.hlit > 257 && h.lit_lengths[h.hlit - 1] == 0) --h.hlit;
    h.hdist = 30;
    while (h.hdist > 1 && h.dist_lengths[h.hdist - 1] == 0) --h.hdist;

    std::vector<std::uint8_t> all(h.lit_lengths.begin(), h.lit_lengths.begin() + h.hlit);
    all.insert(all.end(), h.dist_lengths.begin(), h.dist_lengths.begin() + h.hdist);
    h.runs = rle_lengths(all);
    std::vector<std::uint32_t> cl_freq(19, 0);
    for (const auto& r : h.runs) ++cl_freq[r.symbol];
    ensure_two(cl_freq);
    h.cl_lengths = limited_lengths(cl_freq, 7);
    h.hclen = 19;
    while (h.hclen > 4 && h.cl_lengths[kCodeLengthOrder[h.hclen - 1]] == 0) --h.hclen;
    return h;
}

std::size_t token_bits(std::span<const Token> tokens, std::span<const std::uint8_t> lit_len,
                       std::span<const std::uint8_t> dist_len) {
    std::size_t bits = lit_len[kEndOfBlock];
    for (const auto& t : tokens) {
        if (t.length == 0) {
            bits += lit_len[t.value];
        } else {
            const unsigned ls = length_symbol(t.length);
            const unsigned ds = distance_symbol(t.value);
            bits += lit_len[257 + ls] + kLengthExtra[ls] + dist_len[ds] + kDistExtra[ds];
        }
    }
    return bits;
}

void write_tokens(BitOutput& out, std::span<const Token> tokens, std::span<const std::uint8_t> lit_len,
                  std::span<const std::uint8_t> dist_len) {
    const auto lit_code = canonical_codes(lit_len);
    const auto dist_code = canonical_codes(dist_len);
    for (const auto& t : tokens) {
        if (t.length == 0) {
            out.put(lit_code[t.value], lit_len[t.value]);
            continue;
        }
        const unsigned ls = length_symbol(t.length);
        out.put(lit_code[257 + ls], lit_len[257 + ls]);
        out.put(t.length - kLengthBase[ls], kLengthExtra[ls]);
        const unsigned ds = distance_symbol(t.value);
        out.put(dist_code[ds], dist_len[ds]);
        out.put(t.value - kDistBase[ds], kDistExtra[ds]);
    }
    out.put(lit_code[kEndOfBlock], lit_len[kEndOfBlock]);
}

void write_stored(BitOutput& out, std::span<const std::uint8_t> raw, bool final_block) {
    std::size_t offset = 0;
    do {
        const std::size_t n = std::min(kMaxStored, raw.size() - offset);
        const bool last = final_block && offset + n == raw.size();
        out.put(last ? 1 : 0, 1);
        out.put(0, 2);
        out.align();
        out.byte(static_cast<std::uint8_t>(n & 0xFF));
        out.byte(static_cast<std::uint8_t>(n >> 8));
        out.byte(static_cast<std::uint8_t>(~n & 0xFF));
        out.byte(static_cast<std::uint8_t>((~n >> 8) & 0xFF));
        for (std::size_t i = 0; i < n; ++i) out.byte(raw[offset + i]);
        offset += n;
    } while (offset < raw.size());
}

void write_block(BitOutput& out, std::span<const Token> tokens, std::span<const std::uint8_t> raw, bool final_block) {
    static constexpr auto kFixedLit = fixed_literal_lengths();
    static constexpr auto kFixedDist = fixed_distance_lengths();

    std::vector<std::uint32_t> lit_freq(286, 0);
    std::vector<std::uint32_t> dist_freq(30, 0);
    lit_freq[kEndOfBlock] = 1;
    for (const auto& t : tokens) {
        if (t.length == 0) {
            ++lit_freq[t.value];
        } else {
            ++lit_freq[257 + length_symbol(t.length)];
            ++dist_freq[distance_symbol(t.value)];
        }
    }
    const DynamicHeader dyn = plan_dynamic(lit_freq, dist_freq);

    const std::size_t fixed_cost = 3 + token_bits(tokens, kFixedLit, kFixedDist);
    const std::size_t dynamic_cost = 3 + dyn.header_bits() + token_bits(tokens, dyn.lit_lengths, dyn.dist_lengths);
    const std::size_t stored_blocks = raw.empty() ? 1 : (raw.size() + kMaxStored - 1) / kMaxStored;
    const std::size_t stored_cost = stored_blocks * (3 + 7 + 32) + 8 * raw.size();

    if (stored_cost < fixed_cost && stored_cost < dynamic_cost) {
        write_stored(out, raw, final_block);
        return;
    }
    out.put(final_block ? 1 : 0, 1);
    if (fixed_cost <= dynamic_cost) {
        out.put(1, 2);
        write_tokens(out, tokens, kFixedLit, kFixedDist);
        return;
    }
    out.put(2, 2);
    out.put(dyn.hlit - 257, 5);
    out.put(dyn.hdist - 1, 5);
    out.put(dyn.hclen - 4, 4);
    for (unsigned i = 0; i < dyn.hclen; ++i) out.put(dyn.cl_lengths[kCodeLengthOrder[i]], 3);
    const auto cl_code = canonical_codes(dyn.cl_lengths);
    for (const auto& r : dyn.runs) {
        out.put(cl_code[r.symbol], dyn.cl_lengths[r.symbol]);
        out.put(r.extra, code_length_extra_bits(r.symbol));
    }
    write_tokens(out, tokens, dyn.lit_lengths, dyn.dist_lengths);
}

}  // namespace

CompressedBlob compress(std::span<const std::uint8_t> data, const DeflateOptions& options) {
    const auto tokens = lz77(data, options);
    BitOutput out;
    if (tokens.empty()) {
        write_block(out, {}, {}, true);
    } else {
        std::size_t raw_pos = 0;
        for (std::size_t start = 0; start < tokens.size(); start += kBlockTokens) {
            const std::size_t end = std::min(tokens.size(), start + kBlockTokens);
            std::size_t raw_len = 0;
            for (std::size_t i = start; i < end; ++i) raw_len += tokens[i].length == 0 ? 1 : tokens[i].length;
            write_block(out, std::span(tokens).subspan(start, end - start), data.subspan(raw_pos, raw_len),
                        end == tokens.size());
            raw_pos += raw_len;
        }
    }
    return CompressedBlob{std::move(out).take(), data.size()};
}

CompressedBlob compress(std::string_view data, const DeflateOptions& options) {
    return compress(as_bytes(data), options);
}

}  // namespace relicpress::codec
