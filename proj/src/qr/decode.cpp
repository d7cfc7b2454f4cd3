#include <bit>

#include "layout.hpp"
#include "relicpress/error.hpp"
#include "relicpress/gf256.hpp"
#include "relicpress/kernels.hpp"

namespace relicpress::qr {

namespace {

using detail::layout_for;
using Poly = std::vector<std::uint8_t>;  // coefficient i multiplies x^i

[[noreturn]] void not_a_symbol(const std::string& why) { throw Error(ErrorKind::NotAQrSymbol, why); }
[[noreturn]] void corrupt(const std::string& why) { throw Error(ErrorKind::CorruptSymbol, why); }

void check_finders(const QrMatrix& m) {
    const int size = m.size();
    const int corners[3][2] = {{0, 0}, {size - 7, 0}, {0, size - 7}};
    for (const auto& c : corners)
        for (int dy = 0; dy < 7; ++dy)
            for (int dx = 0; dx < 7; ++dx) {
                const int dist = std::max(std::abs(dx - 3), std::abs(dy - 3));
                if (m.dark(c[0] + dx, c[1] + dy) != (dist != 2))
                    not_a_symbol("finder pattern damaged near (" + std::to_string(c[0]) + "," +
                                 std::to_string(c[1]) + ")");
            }
}

std::pair<Ecc, int> read_format(const QrMatrix& m) {
    std::uint32_t copy1 = 0;
    std::uint32_t copy2 = 0;
    for (int i = 0; i < 15; ++i) {
        const auto [x1, y1] = detail::format_position_primary(i);
        const auto [x2, y2] = detail::format_position_secondary(m.size(), i);
        copy1 |= static_cast<std::uint32_t>(m.dark(x1, y1)) << i;
        copy2 |= static_cast<std::uint32_t>(m.dark(x2, y2)) << i;
    }
    int best = 16;
    std::pair<Ecc, int> found{Ecc::L, 0};
    for (int e = 0; e < 4; ++e)
        for (int mask = 0; mask < 8; ++mask) {
            const auto bits = detail::format_bits(static_cast<Ecc>(e), mask);
            const int d = std::min(std::popcount(bits ^ copy1), std::popcount(bits ^ copy2));
            if (d < best) {
                best = d;
                found = {static_cast<Ecc>(e), mask};
            }
        }
    if (best > 3) not_a_symbol("format information unreadable");
    return found;
}

void check_version(const QrMatrix& m, int version) {
    if (version < 7) return;
    const int size = m.size();
    std::uint32_t copy1 = 0;
    std::uint32_t copy2 = 0;
    for (int i = 0; i < 18; ++i) {
        const int a = size - 11 + i % 3;
        const int b = i / 3;
        copy1 |= static_cast<std::uint32_t>(m.dark(a, b)) << i;
        copy2 |= static_cast<std::uint32_t>(m.dark(b, a)) << i;
    }
    int best = 19;
    int found = 0;
    for (int v = 7; v <= kMaxVersion; ++v) {
        const auto bits = detail::version_bits(v);
        const int d = std::min(std::popcount(bits ^ copy1), std::popcount(bits ^ copy2));
        if (d < best) {
            best = d;
            found = v;
        }
    }
    if (best > 3) not_a_symbol("version information unreadable");
    if (found != version)
        not_a_symbol("version information says " + std::to_string(found) + " but the size implies " +
                     std::to_string(version));
}

std::uint8_t eval(const Poly& p, std::uint8_t x) {
    std::uint8_t y = 0;
    for (std::size_t i = p.size(); i-- > 0;) y = gf256::mul(y, x) ^ p[i];
    return y;
}

// Corrects `block` (highest-degree coefficient first) in place and returns
// the number of symbols changed, or -1 when the errors exceed `max_errors`.
int correct_block(std::vector<std::uint8_t>& block, int ecc_len, int max_errors) {
    const std::size_t n = block.size();
    std::vector<std::uint8_t> syn(static_cast<std::size_t>(ecc_len));
    bool clean = true;
    for (int j = 0; j < ecc_len; ++j) {
        const std::uint8_t x = gf256::pow_alpha(static_cast<unsigned>(j));
        std::uint8_t s = 0;
        for (auto c : block) s = gf256::mul(s, x) ^ c;
        syn[static_cast<std::size_t>(j)] = s;
        clean = clean && s == 0;
    }
    if (clean) return 0;

    // Berlekamp-Massey.
    Poly lambda{1};
    Poly prev{1};
    int errors = 0;
    int shift = 1;
    std::uint8_t prev_disc = 1;
    for (int r = 0; r < ecc_len; ++r) {
        std::uint8_t d = syn[static_cast<std::size_t>(r)];
        for (int i = 1; i <= errors && i < static_cast<int>(lambda.size()); ++i)
            d ^= gf256::mul(lambda[static_cast<std::size_t>(i)], syn[static_cast<std::size_t>(r - i)]);
        if (d == 0) {
            ++shift;
            continue;
        }
        const std::uint8_t coef = gf256::div(d, prev_disc);
        Poly next = lambda;
        if (next.size() < prev.size() + static_cast<std::size_t>(shift)) next.resize(prev.size() + static_cast<std::size_t>(shift), 0);
        for (std::size_t i = 0; i < prev.size(); ++i) next[i + static_cast<std::size_t>(shift)] ^= gf256::mul(coef, prev[i]);
        if (2 * errors <= r) {
            prev = lambda;
            errors = r + 1 - errors;
            prev_disc = d;
            shift = 1;
        } else {
            ++shift;
        }
        lambda = std::move(next);
    }
    while (lambda.size() > 1 && lambda.back() == 0) lambda.pop_back();
    if (errors > max_errors || static_cast<int>(lambda.size()) - 1 != errors) return -1;

    // Chien search over the positions actually present in the block.
    std::vector<std::size_t> where;
    for (std::size_t k = 0; k < n; ++k) {
        const unsigned power = static_cast<unsigned>(n - 1 - k);
        const std::uint8_t inv_x = gf256::pow_alpha((255 - power % 255) % 255);
        if (eval(lambda, inv_x) == 0) where.push_back(k);
    }
    if (static_cast<int>(where.size()) != errors) return -1;

    // Forney with first consecutive root a^0.
    Poly omega(static_cast<std::size_t>(ecc_len), 0);
    for (std::size_t i = 0; i < syn.size(); ++i)
        for (std::size_t j = 0; j < lambda.size() && i + j < omega.size(); ++j)
            omega[i + j] ^= gf256::mul(syn[i], lambda[j]);
    Poly deriv(lambda.size() > 1 ? lambda.size() - 1 : 1, 0);
    for (std::size_t i = 1; i < lambda.size(); i += 2) deriv[i - 1] = lambda[i];

    for (auto k : where) {
        const unsigned power = static_cast<unsigned>(n - 1 - k);
        const std::uint8_t x = gf256::pow_alpha(power);
        const std::uint8_t inv_x = gf256::inv(x);
        const std::uint8_t denom = eval(deriv, inv_x);
        if (denom == 0) return -1;
        block[k] ^= gf256::mul(x, gf256::div(eval(omega, inv_x), denom));
    }

    for (int j = 0; j < ecc_len; ++j) {
        const std::uint8_t x = gf256::pow_alpha(static_cast<unsigned>(j));
        std::uint8_t s = 0;
        for (auto c : block) s = gf256::mul(s, x) ^ c;
        if (s != 0) return -1;
    }
    return errors;
}

std::vector<std::uint8_t> parse_segments(const std::vector<std::uint8_t>& data, int version) {
    std::size_t pos = 0;
    const std::size_t total = data.size() * 8;
    auto read = [&](int bits) {
        std::uint32_t v = 0;
        for (int i = 0; i < bits; ++i, ++pos) v = (v << 1) | ((data[pos / 8] >> (7 - pos % 8)) & 1u);
        return v;
    };
    std::vector<std::uint8_t> out;
    while (total - pos >= 4) {
        const auto mode = read(4);
        if (mode == 0) break;
        if (mode != 0b0100) corrupt("unsupported segment mode " + std::to_string(mode));
        const int cc = char_count_bits(version);
        if (total - pos < static_cast<std::size_t>(cc)) corrupt("truncated character count");
        const std::size_t count = read(cc);
        if (total - pos < count * 8) corrupt("segment length " + std::to_string(count) + " overruns data");
        for (std::size_t i = 0; i < count; ++i) out.push_back(static_cast<std::uint8_t>(read(8)));
    }
    return out;
}

}  // namespace

DecodedSymbol decode(const QrMatrix& input) {
    const int size = input.size();
    if (size < symbol_size(kMinVersion) || size > symbol_size(kMaxVersion) || (size - 17) % 4 != 0)
        not_a_symbol("side of " + std::to_string(size) + " modules is not a QR size");
    const int version = (size - 17) / 4;
    check_finders(input);
    check_version(input, version);
    const auto [ecc, mask] = read_format(input);

    const auto& layout = layout_for(version);
    QrMatrix m = input;
    kernels::active().apply_mask(m.data(), detail::mask_pattern(version, mask).data(), layout.function.data(),
                                 m.modules().size());

    const int total = total_codewords(version);
    std::vector<std::uint8_t> raw(static_cast<std::size_t>(total), 0);
    for (std::size_t i = 0; i < static_cast<std::size_t>(total) * 8; ++i) {
        const auto [x, y] = layout.data_order[i];
        if (m.dark(x, y)) raw[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
    }

    const int nb = num_blocks(version, ecc);
    const int ecc_len = ecc_codewords_per_block(version, ecc);
    const int short_blocks = nb - total % nb;
    const int short_len = total / nb;
    std::vector<std::vector<std::uint8_t>> blocks(static_cast<std::size_t>(nb));
    std::size_t k = 0;
    const int max_data = short_len - ecc_len + (short_blocks < nb ? 1 : 0);
    for (int i = 0; i < max_data; ++i)
        for (int b = 0; b < nb; ++b)
            if (i < short_len - ecc_len || b >= short_blocks) blocks[static_cast<std::size_t>(b)].push_back(raw[k++]);
    for (int i = 0; i < ecc_len; ++i)
        for (int b = 0; b < nb; ++b) blocks[static_cast<std::size_t>(b)].push_back(raw[k++]);

    DecodedSymbol out;
    out.version = version;
    out.ecc = ecc;
    out.mask = mask;
    const int max_errors = (ecc_len - detail::misdecode_protection(version, ecc)) / 2;
    std::vector<std::uint8_t> data;
    for (int b = 0; b < nb; ++b) {
        auto& block = blocks[static_cast<std::size_t>(b)];
        const int fixed = correct_block(block, ecc_len, max_errors);
        if (fixed < 0) corrupt("block " + std::to_string(b) + " has more errors than it can correct");
        out.corrected_codewords += static_cast<std::size_t>(fixed);
        data.insert(data.end(), block.begin(), block.end() - ecc_len);
    }
    out.payload = parse_segments(data, version);
    return out;
}

std::vector<std::uint8_t> decode_symbol(const QrMatrix& m) { return decode(m).payload; }

}  // namespace relicpress::qr
