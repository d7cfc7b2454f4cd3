#include "relicpress/error.hpp"
#include "relicpress/payload.hpp"

namespace relicpress::payload {

namespace {

[[noreturn]] void malformed(std::size_t at, const std::string& what) {
    throw Error(ErrorKind::InvalidInput, "payload layout: " + what + " at offset " + std::to_string(at));
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void expect(std::string_view lit) {
        if (text_.substr(pos_, lit.size()) != lit) malformed(pos_, "expected '" + std::string(lit) + "'");
        pos_ += lit.size();
    }

    bool peek(std::string_view lit) const { return text_.substr(pos_, lit.size()) == lit; }

    // Reads up to an unescaped `close`, undoing the escapes the assembler emits.
    std::string quoted(char close) {
        std::string out;
        while (true) {
            if (pos_ >= text_.size()) malformed(pos_, "unterminated literal");
            const char c = text_[pos_++];
            if (c == close) return out;
            if (c != '\\') {
                out += c;
                continue;
            }
            if (pos_ >= text_.size()) malformed(pos_, "dangling backslash");
            const char e = text_[pos_++];
            switch (e) {
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 't': out += '\t'; break;
                case 'x': {
                    if (pos_ + 2 > text_.size()) malformed(pos_, "short \\x escape");
                    const int hi = hex_digit(text_[pos_]);
                    const int lo = hex_digit(text_[pos_ + 1]);
                    if (hi < 0 || lo < 0) malformed(pos_, "bad \\x escape");
                    out += static_cast<char>(hi * 16 + lo);
                    pos_ += 2;
                    break;
                }
                default: out += e;
            }
        }
    }

    std::string_view until(std::string_view lit) {
        const auto at = text_.find(lit, pos_);
        if (at == std::string_view::npos) malformed(pos_, "missing '" + std::string(lit) + "'");
        const auto out = text_.substr(pos_, at - pos_);
        pos_ = at;
        return out;
    }

    std::size_t pos() const { return pos_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

codec::TokenDictionary parse_dict(std::string_view d) {
    if (d.empty()) malformed(0, "empty dictionary string");
    std::vector<codec::TokenDictionary::Entry> entries;
    std::size_t i = 1;
    while (i < d.size()) {
        auto end = d.find(' ', i);
        if (end == std::string_view::npos) end = d.size();
        const auto word = d.substr(i, end - i);
        if (word.size() < 2) malformed(i, "dictionary entry without mnemonic");
        entries.emplace_back(word[0], std::string(word.substr(1)));
        i = end + 1;
    }
    return codec::TokenDictionary(std::move(entries), d[0]);
}

}  // namespace

std::string render_document(std::span<const std::pair<std::string, std::string>> sections, std::string_view core) {
    std::string out(kDocumentTitle);
    for (const auto& [id, text] : sections) out += "\n# --- " + id + " ---\n" + text + "\n";
    if (!core.empty()) out.append(kCoreHeader).append(core);
    return out;
}

ExtractedDocument parse_payload(std::string_view payload) {
    std::string decoded;
    if (payload.starts_with("data:")) {
        decoded = data_uri_decode(payload);
        payload = decoded;
    }
    Cursor c(payload);
    c.expect(kShellPrefix);
    c.expect("d=\"");
    ExtractedDocument doc;
    doc.dict = parse_dict(c.quoted('"'));
    c.expect(";s=[");
    while (!c.peek("]")) {
        if (!doc.sections.empty()) c.expect(",");
        c.expect("`");
        const std::string body = c.quoted('`');
        const auto nl = body.find('\n');
        if (nl == std::string::npos) malformed(c.pos(), "section literal without id line");
        doc.sections.emplace_back(body.substr(0, nl), body.substr(nl + 1));
    }
    c.expect("];b=\"");
    doc.blob = base64_decode(c.until("\""));
    c.expect("\";");
    c.until(kShellSuffix);
    c.expect(kShellSuffix);
    if (c.pos() != payload.size()) malformed(c.pos(), "trailing bytes after document");
    return doc;
}

ExtractedDocument extract_payload(std::string_view payload) {
    auto doc = parse_payload(payload);
    doc.tokenized_core = codec::to_string(codec::inflate_raw(doc.blob));
    doc.core = codec::detokenize(doc.tokenized_core, doc.dict);
    doc.rendered = render_document(doc.sections, doc.core);
    return doc;
}

}  // namespace relicpress::payload
