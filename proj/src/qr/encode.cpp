#include <algorithm>
#include <limits>

#include "layout.hpp"
#include "relicpress/error.hpp"
#include "relicpress/gf256.hpp"
#include "relicpress/kernels.hpp"

namespace relicpress::qr {

namespace {

using detail::layout_for;

class BitBuffer {
public:
    void put(std::uint32_t value, int bits) {
        for (int i = bits - 1; i >= 0; --i) bits_.push_back(static_cast<std::uint8_t>((value >> i) & 1u));
    }
    std::size_t size() const noexcept { return bits_.size(); }
    std::vector<std::uint8_t> bytes() const {
        std::vector<std::uint8_t> out(bits_.size() / 8, 0);
        for (std::size_t i = 0; i < out.size() * 8; ++i) out[i / 8] |= static_cast<std::uint8_t>(bits_[i] << (7 - i % 8));
        return out;
    }

private:
    std::vector<std::uint8_t> bits_;
};

std::vector<std::uint8_t> data_codeword_stream(std::span<const std::uint8_t> payload, int version, Ecc ecc) {
    const int capacity_bits = data_codewords(version, ecc) * 8;
    BitBuffer bb;
    bb.put(0b0100, 4);
    bb.put(static_cast<std::uint32_t>(payload.size()), char_count_bits(version));
    for (auto b : payload) bb.put(b, 8);
    bb.put(0, std::min<int>(4, capacity_bits - static_cast<int>(bb.size())));
    bb.put(0, static_cast<int>((8 - bb.size() % 8) % 8));
    auto out = bb.bytes();
    for (std::uint8_t pad = 0xEC; out.size() < static_cast<std::size_t>(data_codewords(version, ecc)); pad ^= 0xEC ^ 0x11)
        out.push_back(pad);
    return out;
}

std::vector<std::uint8_t> add_ecc_and_interleave(const std::vector<std::uint8_t>& data, int version, Ecc ecc) {
    const int nb = num_blocks(version, ecc);
    const int ecc_len = ecc_codewords_per_block(version, ecc);
    const int total = total_codewords(version);
    const int short_blocks = nb - total % nb;
    const int short_len = total / nb;
    const auto gen = rs_generator(ecc_len);

    std::vector<std::vector<std::uint8_t>> blocks;
    std::vector<std::vector<std::uint8_t>> eccs;
    std::size_t k = 0;
    for (int i = 0; i < nb; ++i) {
        const std::size_t dlen = static_cast<std::size_t>(short_len - ecc_len + (i < short_blocks ? 0 : 1));
        blocks.emplace_back(data.begin() + static_cast<std::ptrdiff_t>(k),
                            data.begin() + static_cast<std::ptrdiff_t>(k + dlen));
        k += dlen;
        eccs.push_back(rs_remainder(blocks.back(), gen));
    }

    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(total));
    const std::size_t max_data = blocks.back().size();
    for (std::size_t i = 0; i < max_data; ++i)
        for (const auto& b : blocks)
            if (i < b.size()) out.push_back(b[i]);
    for (int i = 0; i < ecc_len; ++i)
        for (const auto& e : eccs) out.push_back(e[static_cast<std::size_t>(i)]);
    return out;
}

void add_run_penalty(int run, int& score) {
    if (run >= 5) score += 3 + (run - 5);
}

// Rules 1 and 3 along one line; positions outside the symbol count as light.
int line_penalty(const std::uint8_t* line, int n) {
    int score = 0;
    int run = 1;
    for (int i = 1; i < n; ++i) {
        if (line[i] == line[i - 1]) {
            ++run;
        } else {
            add_run_penalty(run, score);
            run = 1;
        }
    }
    add_run_penalty(run, score);

    auto light = [&](int from, int to) {
        from = std::max(from, 0);
        to = std::min(to, n);
        for (int i = from; i < to; ++i)
            if (line[i]) return false;
        return true;
    };
    static constexpr std::uint8_t kFinder[7] = {1, 0, 1, 1, 1, 0, 1};
    for (int i = 0; i + 7 <= n; ++i) {
        if (!std::equal(kFinder, kFinder + 7, line + i)) continue;
        if (light(i - 4, i) || light(i + 7, i + 11)) score += 40;
    }
    return score;
}

}  // namespace

std::vector<std::uint8_t> rs_generator(int degree) {
    std::vector<std::uint8_t> g(static_cast<std::size_t>(degree), 0);
    g.back() = 1;
    std::uint8_t root = 1;
    for (int i = 0; i < degree; ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            g[j] = gf256::mul(g[j], root);
            if (j + 1 < g.size()) g[j] ^= g[j + 1];
        }
        root = gf256::mul(root, 2);
    }
    return g;
}

std::vector<std::uint8_t> rs_remainder(std::span<const std::uint8_t> data, std::span<const std::uint8_t> generator) {
    const auto& k = kernels::active();
    std::vector<std::uint8_t> rem(generator.size(), 0);
    for (auto b : data) {
        const std::uint8_t factor = b ^ rem.front();
        std::rotate(rem.begin(), rem.begin() + 1, rem.end());
        rem.back() = 0;
        k.gf_mul_add(rem.data(), generator.data(), factor, rem.size());
    }
    return rem;
}

int penalty_score(const QrMatrix& m) {
    const int n = m.size();
    const auto& k = kernels::active();
    int score = 0;
    std::vector<std::uint8_t> column(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        score += line_penalty(m.row(i), n);
        for (int y = 0; y < n; ++y) column[static_cast<std::size_t>(y)] = m.row(y)[i];
        score += line_penalty(column.data(), n);
    }
    for (int y = 0; y + 1 < n; ++y)
        score += 3 * static_cast<int>(k.count_uniform_2x2(m.row(y), m.row(y + 1), static_cast<std::size_t>(n)));
    const auto total = static_cast<long>(n) * n;
    const auto dark = static_cast<long>(k.count_nonzero(m.modules().data(), m.modules().size()));
    score += static_cast<int>(std::labs(dark * 2 - total) * 10 / total) * 10;
    return score;
}

EncodedSymbol encode(std::span<const std::uint8_t> payload, const QrSymbolSpec& spec) {
    if (spec.version != 0 && (spec.version < kMinVersion || spec.version > kMaxVersion))
        throw Error(ErrorKind::InvalidInput, "version must be 1..40, got " + std::to_string(spec.version));
    if (spec.mask < -1 || spec.mask > 7) throw Error(ErrorKind::InvalidInput, "mask must be -1..7");
    const int version = spec.version == 0 ? select_version(payload.size(), spec.ecc) : spec.version;
    if (payload.size() > capacity(version, spec.ecc))
        throw Error(ErrorKind::CapacityExceeded, std::to_string(payload.size()) + " bytes exceed version " +
                                                     std::to_string(version) + "-" + ecc_letter(spec.ecc) +
                                                     " capacity of " + std::to_string(capacity(version, spec.ecc)));

    const auto codewords = add_ecc_and_interleave(data_codeword_stream(payload, version, spec.ecc), version, spec.ecc);
    const auto& layout = layout_for(version);

    QrMatrix base(layout.size);
    detail::draw_function_patterns(base);
    const std::size_t nbits = codewords.size() * 8;
    for (std::size_t i = 0; i < layout.data_order.size(); ++i) {
        const auto [x, y] = layout.data_order[i];
        base.set(x, y, i < nbits && ((codewords[i / 8] >> (7 - i % 8)) & 1u));
    }

    const auto& k = kernels::active();
    auto masked = [&](int mask) {
        QrMatrix m = base;
        k.apply_mask(m.data(), detail::mask_pattern(version, mask).data(), layout.function.data(), m.modules().size());
        detail::draw_format_bits(m, detail::format_bits(spec.ecc, mask));
        return m;
    };

    EncodedSymbol out;
    out.version = version;
    out.ecc = spec.ecc;
    if (spec.mask >= 0) {
        out.mask = spec.mask;
        out.matrix = masked(spec.mask);
        return out;
    }
    int best = std::numeric_limits<int>::max();
    for (int mask = 0; mask < 8; ++mask) {
        QrMatrix m = masked(mask);
        const int p = penalty_score(m);
        out.penalties.push_back(p);
        if (p < best) {
            best = p;
            out.mask = mask;
            out.matrix = std::move(m);
        }
    }
    return out;
}

QrMatrix encode_symbol(std::span<const std::uint8_t> payload, const QrSymbolSpec& spec) {
    return encode(payload, spec).matrix;
}

}  // namespace relicpress::qr
