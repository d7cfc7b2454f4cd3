#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>

#include "relicpress/corpus.hpp"

namespace relicpress::corpus {

namespace {

bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\v' || c == '\f' || c == '\r';
}

bool valid_utf8(std::string_view s) noexcept {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t extra = 0;
        std::uint32_t cp = 0;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            extra = 1;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            extra = 2;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            extra = 3;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + extra >= s.size()) return false;
        for (std::size_t k = 1; k <= extra; ++k) {
            const auto cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        static constexpr std::array<std::uint32_t, 4> kMin{0, 0x80, 0x800, 0x10000};
        if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += extra + 1;
    }
    return true;
}

const std::unordered_set<std::string_view>& mnemonic_set() {
    static const std::unordered_set<std::string_view> set = [] {
        static constexpr std::string_view kWords[] = {
            // basic instructions and implied-address codes
            "TC", "TCR", "CCS", "TCF", "DAS", "LXCH", "INCR", "ADS", "CA", "CAE", "CAF", "CS",
            "INDEX", "NDX", "RESUME", "DXCH", "TS", "XCH", "AD", "MASK", "MSK", "RELINT",
            "INHINT", "EXTEND", "NOOP", "XLQ", "XXALQ", "RETURN", "COM", "DOUBLE", "DDOUBL",
            "DCOM", "ZL", "ZQ", "OVSK", "TCAA", "SQUARE", "CCALL",
            // extracodes
            "READ", "WRITE", "RAND", "WAND", "ROR", "WOR", "RXOR", "EDRUPT", "DV", "BZF", "MSU",
            "QXCH", "AUG", "DIM", "DCA", "DCS", "SU", "BZMF", "MP",
            // assembler directives and constants
            "OCT", "OCTAL", "DEC", "DEC*", "2DEC", "2DEC*", "2OCT", "CADR", "2CADR", "FCADR",
            "GENADR", "ECADR", "ADRES", "REMADR", "BBCON", "BBCON*", "2BCADR", "2FCADR",
            "EQUALS", "=", "ERASE", "BANK", "SETLOC", "BLOCK", "COUNT", "COUNT*", "EBANK=",
            "SBANK=", "MM", "VN", "NV", "DNCHAN", "DNPTR", "1DNADR", "2DNADR", "3DNADR",
            "4DNADR", "5DNADR", "6DNADR", "BNKSUM", "MEMORY", "SUBRO", "CHECK=", "=ECADR",
            "=MINUS", "CAF*",
            // interpretive language
            "VLOAD", "DLOAD", "SLOAD", "TLOAD", "PDDL", "PDVL", "PUSH", "STORE", "STCALL",
            "STOVL", "STODL", "STQ", "CALL", "CALRB", "GOTO", "EXIT", "RTB", "RVQ", "ITA",
            "BHIZ", "BMN", "BOV", "BOVB", "BPL", "BZE", "BON", "BOFF", "BONSET", "BOFSET",
            "BONCLR", "BOFCLR", "BOFINV", "BONINV", "SET", "CLEAR", "INVERT", "SETGO", "CLRGO",
            "INVGO", "SETPD", "SSP", "DAD", "DSU", "BDSU", "DMP", "DMPR", "DDV", "BDDV",
            "SIGN", "ABS", "DSQ", "SQRT", "SIN", "COS", "ASIN", "ACOS", "ROUND", "VAD", "VSU",
            "BVSU", "DOT", "VXV", "VXSC", "V/SC", "UNIT", "VSQ", "ABVAL", "MXV", "VXM",
            "VPROJ", "VSL", "VSR", "SL", "SR", "SLR", "SRR", "SL1R", "SR1R", "SL2R", "SR2R",
            "SL3R", "SR3R", "SL4R", "SR4R", "NORM", "TAD", "DCOMP", "VCOMP", "VDEF", "CGOTO",
            "CCALL", "SIGNMPAC", "PDVL*", "VLOAD*", "DLOAD*", "DAD*", "DSU*", "DMP*",
            "AXT,1", "AXT,2", "AXC,1", "AXC,2", "LXA,1", "LXA,2", "LXC,1", "LXC,2", "SXA,1",
            "SXA,2", "XCHX,1", "XCHX,2", "INCR,1", "INCR,2", "XAD,1", "XAD,2", "XSU,1",
            "XSU,2", "TIX,1", "TIX,2", "STADR",
        };
        std::unordered_set<std::string_view> s(std::begin(kWords), std::end(kWords));
        return s;
    }();
    return set;
}

bool is_shift_family(std::string_view w) noexcept {
    // VSL1..VSL8, VSR1..VSR8, SL1..SL4, SR1..SR4 with optional R suffix.
    for (std::string_view prefix : {"VSL", "VSR", "SL", "SR"}) {
        if (w.size() > prefix.size() && w.substr(0, prefix.size()) == prefix) {
            std::string_view rest = w.substr(prefix.size());
            if (!rest.empty() && rest.back() == 'R') rest.remove_suffix(1);
            if (rest.size() == 1 && rest[0] >= '1' && rest[0] <= '8') return true;
        }
    }
    return false;
}

AgcStatement parse_line(std::string_view line, std::string_view eol, std::size_t line_no) {
    AgcStatement st;
    st.line_no = line_no;
    st.eol = std::string(eol);
    st.gaps.clear();

    std::string_view code = line;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) {
        code = line.substr(0, hash);
        st.comment = std::string(line.substr(hash + 1));
    }

    std::vector<std::string> words;
    std::size_t i = 0;
    while (true) {
        const std::size_t gap_start = i;
        while (i < code.size() && is_space(code[i])) ++i;
        st.gaps.emplace_back(code.substr(gap_start, i - gap_start));
        if (i >= code.size()) break;
        const std::size_t word_start = i;
        while (i < code.size() && !is_space(code[i])) ++i;
        words.emplace_back(code.substr(word_start, i - word_start));
    }

    if (!valid_utf8(line)) {
        // Keep the bytes, flag the line; the fields below still partition it.
        st.diagnostic = true;
    }

    if (words.empty()) {
        st.kind = st.comment ? StatementKind::Comment : StatementKind::Blank;
        if (st.diagnostic) st.kind = StatementKind::Opaque;
        return st;
    }

    std::size_t next = 0;
    const bool column_one = st.gaps.front().empty();
    if (column_one && !is_known_mnemonic(words[0])) {
        st.label = words[0];
        next = 1;
    }
    if (next < words.size()) {
        st.opcode = words[next];
        st.operands.assign(words.begin() + static_cast<std::ptrdiff_t>(next + 1), words.end());
        st.kind = st.diagnostic ? StatementKind::Opaque : StatementKind::Instruction;
    } else {
        // Label with nothing after it.
        st.kind = StatementKind::Opaque;
        st.diagnostic = true;
    }
    return st;
}

}  // namespace

bool is_known_mnemonic(std::string_view word) noexcept {
    return mnemonic_set().contains(word) || is_shift_family(word);
}

std::vector<AgcStatement> parse_agc_source(std::string_view text) {
    std::vector<AgcStatement> out;
    if (text.empty()) {
        out.push_back(parse_line({}, {}, 1));
        return out;
    }
    std::size_t pos = 0;
    std::size_t line_no = 1;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line;
        std::string_view eol;
        if (nl == std::string_view::npos) {
            line = text.substr(pos);
            pos = text.size();
        } else {
            line = text.substr(pos, nl - pos);
            eol = text.substr(nl, 1);
            if (!line.empty() && line.back() == '\r') {
                line.remove_suffix(1);
                eol = text.substr(nl - 1, 2);
            }
            pos = nl + 1;
        }
        out.push_back(parse_line(line, eol, line_no++));
    }
    return out;
}

std::string serialize(const AgcStatement& st) {
    std::string out;
    std::size_t g = 0;
    auto emit_word = [&](const std::string& w) {
        out += g < st.gaps.size() ? st.gaps[g] : std::string(g == 0 ? "" : " ");
        ++g;
        out += w;
    };
    if (st.label) emit_word(*st.label);
    if (!st.opcode.empty()) emit_word(st.opcode);
    for (const auto& op : st.operands) emit_word(op);
    out += g < st.gaps.size() ? st.gaps[g] : std::string();
    if (st.comment) {
        out += '#';
        out += *st.comment;
    }
    out += st.eol;
    return out;
}

std::string serialize(std::span<const AgcStatement> statements) {
    std::string out;
    for (const auto& st : statements) out += serialize(st);
    return out;
}

AgcStatement make_instruction(std::optional<std::string> label, std::string opcode,
                              std::vector<std::string> operands,
                              std::optional<std::string> comment) {
    AgcStatement st;
    st.kind = StatementKind::Instruction;
    st.label = std::move(label);
    st.opcode = std::move(opcode);
    st.operands = std::move(operands);
    st.comment = std::move(comment);
    st.gaps.assign(st.word_count() + 1, " ");
    st.gaps.front().clear();
    if (!st.comment) st.gaps.back().clear();
    return st;
}

AgcStatement make_comment(std::string text) {
    AgcStatement st;
    st.kind = StatementKind::Comment;
    st.comment = std::move(text);
    return st;
}

AgcStatement make_blank() { return AgcStatement{}; }

void renumber(std::vector<AgcStatement>& statements) {
    for (std::size_t i = 0; i < statements.size(); ++i) {
        statements[i].line_no = i + 1;
        statements[i].eol = i + 1 < statements.size() ? "\n" : "";
    }
}

}  // namespace relicpress::corpus
