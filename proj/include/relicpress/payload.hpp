#pragma once

// Self-extracting HTML artifact.
//
// Layout (RawHtml mode), with every part counted in the budget:
//
//   shell    <!DOCTYPE html><html><body style="font-family:monospace">\n
//            <pre id="o">Loading...</pre><script>   ...   </script></body></html>
//   dict     d="<escape><tok><mnemonic> <tok><mnemonic> ...";
//   sections s=[`<id>\n<text>`,...];
//   blob     b="<base64 of raw deflate>";
//   stub     viewer script reading d, s and b and writing into #o
//
// DataUri mode wraps the same bytes as data:text/html;charset=utf-8,<pct-encoded>.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relicpress/corpus.hpp"
#include "relicpress/deflate.hpp"
#include "relicpress/token_dictionary.hpp"

namespace relicpress::payload {

enum class PayloadMode { RawHtml, DataUri };

/// Byte-mode capacity of a version 40-L symbol; nothing larger can be scanned.
inline constexpr std::size_t kBudgetCap = 2953;

inline constexpr std::string_view kShellPrefix =
    "<!DOCTYPE html><html><body style=\"font-family:monospace\">\n<pre id=\"o\">Loading...</pre><script>";
inline constexpr std::string_view kShellSuffix = "</script></body></html>";
inline constexpr std::string_view kDataUriPrefix = "data:text/html;charset=utf-8,";
inline constexpr std::string_view kDocumentTitle = "# APOLLO 11 LUNAR MODULE CODE\n";
inline constexpr std::string_view kCoreHeader = "\n# Decompressed core:\n";

struct PayloadArtifact {
    std::string html;
    PayloadMode mode = PayloadMode::RawHtml;
    std::size_t shell_bytes = 0;
    std::size_t uri_prefix_bytes = 0;  // DataUri mode only
    std::size_t dict_bytes = 0;
    std::size_t sections_bytes = 0;
    std::size_t blob_bytes = 0;        // the whole b="..."; statement
    std::size_t blob_base64_bytes = 0; // just the base64 text (before URI encoding)
    std::size_t stub_bytes = 0;
    std::size_t total_bytes = 0;
};

struct BudgetRow {
    std::string part;
    std::size_t bytes = 0;
    double percent = 0.0;
};

/// Throws Error(BudgetExceeded) with a per-part breakdown when the result
/// exceeds `cap` bytes.
PayloadArtifact assemble_payload(const codec::CompressedBlob& blob, std::span<const corpus::SectionSpec> sections,
                                 const codec::TokenDictionary& dict, std::string_view stub, PayloadMode mode,
                                 std::size_t cap = kBudgetCap);

std::vector<BudgetRow> budget_report(const PayloadArtifact& artifact);
std::string budget_report_tsv(const PayloadArtifact& artifact);

std::string_view default_viewer_stub() noexcept;

std::string base64_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> base64_decode(std::string_view text);

std::string data_uri_encode(std::string_view html);
std::string data_uri_decode(std::string_view uri);

/// What the viewer would display, reproduced on the host.
struct ExtractedDocument {
    codec::TokenDictionary dict;
    std::vector<std::pair<std::string, std::string>> sections;  // (id, text)
    std::vector<std::uint8_t> blob;                             // raw deflate bytes
    std::string tokenized_core;
    std::string core;
    std::string rendered;
};

/// Accepts RawHtml bytes or a data: URI. Throws InvalidInput when the layout
/// is not recognised, InflateError / MalformedTokenStream from the chain.
ExtractedDocument extract_payload(std::string_view payload);

/// Parses the embedded parts without inflating or detokenizing.
ExtractedDocument parse_payload(std::string_view payload);

std::string render_document(std::span<const std::pair<std::string, std::string>> sections, std::string_view core);

}  // namespace relicpress::payload
