#include <cstdio>

#include "relicpress/error.hpp"
#include "relicpress/payload.hpp"

namespace relicpress::payload {

namespace {

// `<` is always escaped so no part can close the script element early.
void append_js_string_char(std::string& out, char c) {
    switch (c) {
        case '\\': out += "\\\\"; break;
        case '"': out += "\\\""; break;
        case '<': out += "\\x3c"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        default: out += c;
    }
}

void append_template_char(std::string& out, std::string_view text, std::size_t i) {
    const char c = text[i];
    switch (c) {
        case '\\': out += "\\\\"; break;
        case '`': out += "\\`"; break;
        case '<': out += "\\x3c"; break;
        case '\r': out += "\\r"; break;
        case '$':
            out += (i + 1 < text.size() && text[i + 1] == '{') ? "\\$" : "$";
            break;
        default: out += c;
    }
}

std::string dict_statement(const codec::TokenDictionary& dict) {
    std::string out = "d=\"";
    append_js_string_char(out, dict.escape());
    bool first = true;
    for (const auto& [tok, mnemonic] : dict.entries()) {
        if (!first) out += ' ';
        first = false;
        append_js_string_char(out, tok);
        for (char c : mnemonic) append_js_string_char(out, c);
    }
    out += "\";";
    return out;
}

std::string sections_statement(std::span<const corpus::SectionSpec> sections) {
    std::string out = "s=[";
    for (std::size_t k = 0; k < sections.size(); ++k) {
        if (k) out += ',';
        out += '`';
        const std::string body = sections[k].id + "\n" + sections[k].text;
        for (std::size_t i = 0; i < body.size(); ++i) append_template_char(out, body, i);
        out += '`';
    }
    out += "];";
    return out;
}

std::size_t uri_length(std::string_view part) {
    return data_uri_encode(part).size() - kDataUriPrefix.size();
}

std::string breakdown(const PayloadArtifact& a) {
    std::string out;
    for (const auto& row : budget_report(a)) out += "\n  " + row.part + " " + std::to_string(row.bytes);
    return out;
}

}  // namespace

PayloadArtifact assemble_payload(const codec::CompressedBlob& blob, std::span<const corpus::SectionSpec> sections,
                                 const codec::TokenDictionary& dict, std::string_view stub, PayloadMode mode,
                                 std::size_t cap) {
    for (const auto& s : sections)
        if (s.id.empty() || s.id.find_first_of("\n\r") != std::string::npos)
            throw Error(ErrorKind::InvalidInput, "section id must be a non-empty single line");
    if (stub.find("</") != std::string_view::npos)
        throw Error(ErrorKind::InvalidInput, "viewer stub must not contain '</'");

    const std::string d = dict_statement(dict);
    const std::string s = sections_statement(sections);
    const std::string b64 = base64_encode(blob.data);
    const std::string b = "b=\"" + b64 + "\";";

    PayloadArtifact a;
    a.mode = mode;
    a.html.reserve(kShellPrefix.size() + d.size() + s.size() + b.size() + stub.size() + kShellSuffix.size());
    a.html.append(kShellPrefix).append(d).append(s).append(b).append(stub).append(kShellSuffix);
    a.blob_base64_bytes = b64.size();

    if (mode == PayloadMode::RawHtml) {
        a.shell_bytes = kShellPrefix.size() + kShellSuffix.size();
        a.dict_bytes = d.size();
        a.sections_bytes = s.size();
        a.blob_bytes = b.size();
        a.stub_bytes = stub.size();
    } else {
        a.uri_prefix_bytes = kDataUriPrefix.size();
        a.shell_bytes = uri_length(kShellPrefix) + uri_length(kShellSuffix);
        a.dict_bytes = uri_length(d);
        a.sections_bytes = uri_length(s);
        a.blob_bytes = uri_length(b);
        a.stub_bytes = uri_length(stub);
        a.html = data_uri_encode(a.html);
    }
    a.total_bytes = a.html.size();

    if (a.total_bytes > cap)
        throw Error(ErrorKind::BudgetExceeded, "payload is " + std::to_string(a.total_bytes) + " bytes, cap " +
                                                   std::to_string(cap) + breakdown(a));
    return a;
}

std::vector<BudgetRow> budget_report(const PayloadArtifact& a) {
    std::vector<BudgetRow> rows;
    if (a.mode == PayloadMode::DataUri) rows.push_back({"uri_prefix", a.uri_prefix_bytes, 0.0});
    rows.push_back({"shell", a.shell_bytes, 0.0});
    rows.push_back({"dict", a.dict_bytes, 0.0});
    rows.push_back({"sections", a.sections_bytes, 0.0});
    rows.push_back({"blob", a.blob_bytes, 0.0});
    rows.push_back({"stub", a.stub_bytes, 0.0});
    for (auto& r : rows)
        r.percent = a.total_bytes ? 100.0 * static_cast<double>(r.bytes) / static_cast<double>(a.total_bytes) : 0.0;
    return rows;
}

std::string budget_report_tsv(const PayloadArtifact& a) {
    std::string out = "part\tbytes\tpercent\n";
    char pct[32];
    for (const auto& r : budget_report(a)) {
        std::snprintf(pct, sizeof pct, "%.1f", r.percent);
        out += r.part + "\t" + std::to_string(r.bytes) + "\t" + pct + "\n";
    }
    std::snprintf(pct, sizeof pct, "%.1f", a.total_bytes ? 100.0 : 0.0);
    out += "total\t" + std::to_string(a.total_bytes) + "\t" + pct + "\n";
    return out;
}

}  // namespace relicpress::payload
