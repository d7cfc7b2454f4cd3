#include <array>

#include "relicpress/error.hpp"
#include "relicpress/payload.hpp"

namespace relicpress::payload {

namespace {

constexpr std::string_view kAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

constexpr std::array<int, 256> decode_table() {
    std::array<int, 256> t{};
    t.fill(-1);
    for (std::size_t i = 0; i < kAlphabet.size(); ++i) t[static_cast<unsigned char>(kAlphabet[i])] = static_cast<int>(i);
    return t;
}

bool uri_safe(unsigned char c) noexcept {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) return true;
    switch (c) {
        case '-': case '.': case '_': case '~': case '!': case '$': case '&': case '\'':
        case '(': case ')': case '*': case '+': case ',': case ';': case '=': case ':':
        case '@': case '/':
            return true;
        default:
            return false;
    }
}

int hex_value(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= data.size(); i += 3) {
        const std::uint32_t v = (std::uint32_t{data[i]} << 16) | (std::uint32_t{data[i + 1]} << 8) | data[i + 2];
        out += kAlphabet[(v >> 18) & 63];
        out += kAlphabet[(v >> 12) & 63];
        out += kAlphabet[(v >> 6) & 63];
        out += kAlphabet[v & 63];
    }
    if (const std::size_t rest = data.size() - i; rest > 0) {
        std::uint32_t v = std::uint32_t{data[i]} << 16;
        if (rest == 2) v |= std::uint32_t{data[i + 1]} << 8;
        out += kAlphabet[(v >> 18) & 63];
        out += kAlphabet[(v >> 12) & 63];
        out += rest == 2 ? kAlphabet[(v >> 6) & 63] : '=';
        out += '=';
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
    static constexpr auto kTable = decode_table();
    if (text.size() % 4 != 0) throw Error(ErrorKind::InvalidInput, "base64 length is not a multiple of 4");
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        const bool last = i + 4 == text.size();
        std::size_t pad = 0;
        if (last && text[i + 3] == '=') pad = text[i + 2] == '=' ? 2 : 1;
        std::uint32_t v = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            int d = 0;
            if (k < 4 - pad) {
                d = kTable[static_cast<unsigned char>(text[i + k])];
                if (d < 0) throw Error(ErrorKind::InvalidInput, "invalid base64 character at " + std::to_string(i + k));
            }
            v = (v << 6) | static_cast<std::uint32_t>(d);
        }
        out.push_back(static_cast<std::uint8_t>(v >> 16));
        if (pad < 2) out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
        if (pad < 1) out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    }
    return out;
}

std::string data_uri_encode(std::string_view html) {
    static constexpr std::string_view kHex = "0123456789ABCDEF";
    std::string out(kDataUriPrefix);
    for (char ch : html) {
        const auto c = static_cast<unsigned char>(ch);
        if (uri_safe(c)) {
            out += ch;
        } else {
            out += '%';
            out += kHex[c >> 4];
            out += kHex[c & 15];
        }
    }
    return out;
}

std::string data_uri_decode(std::string_view uri) {
    if (!uri.starts_with("data:")) throw Error(ErrorKind::InvalidInput, "not a data: URI");
    const auto comma = uri.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorKind::InvalidInput, "data: URI without ','");
    const auto header = uri.substr(5, comma - 5);
    if (header.find(";base64") != std::string_view::npos)
        throw Error(ErrorKind::InvalidInput, "base64 data: URIs are not produced by this tool");
    std::string out;
    for (std::size_t i = comma + 1; i < uri.size(); ++i) {
        if (uri[i] != '%') {
            out += uri[i];
            continue;
        }
        if (i + 2 >= uri.size()) throw Error(ErrorKind::InvalidInput, "truncated percent escape");
        const int hi = hex_value(uri[i + 1]);
        const int lo = hex_value(uri[i + 2]);
        if (hi < 0 || lo < 0) throw Error(ErrorKind::InvalidInput, "bad percent escape at " + std::to_string(i));
        out += static_cast<char>(hi * 16 + lo);
        i += 2;
    }
    return out;
}

}  // namespace relicpress::payload
