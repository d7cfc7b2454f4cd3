#pragma once

// Ingestion of AGC assembly transcriptions (yaYUL-style `.agc` files).
//
// A line is split into whitespace-separated words and an optional `#` comment.
// The whitespace runs between words are kept verbatim, so serialize() of a
// parsed file reproduces the input byte-for-byte.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relicpress::corpus {

enum class StatementKind { Instruction, Comment, Blank, Opaque };

struct AgcStatement {
    StatementKind kind = StatementKind::Blank;
    std::optional<std::string> label;
    std::string opcode;
    std::vector<std::string> operands;
    std::optional<std::string> comment;  // text after '#', without the marker
    std::size_t line_no = 1;

    // Spacing metadata. gaps.size() == word_count() + 1: gaps[0] precedes the
    // first word, gaps.back() follows the last word (before any comment).
    std::vector<std::string> gaps{""};
    std::string eol;  // "\n", "\r\n" or "" on an unterminated last line

    // Set on Opaque statements: label-only lines and invalid UTF-8.
    bool diagnostic = false;

    std::size_t word_count() const noexcept {
        return (label ? 1u : 0u) + (opcode.empty() ? 0u : 1u) + operands.size();
    }

    bool operator==(const AgcStatement&) const = default;
};

std::vector<AgcStatement> parse_agc_source(std::string_view text);

std::string serialize(const AgcStatement& statement);
std::string serialize(std::span<const AgcStatement> statements);

// True for AGC machine instructions, extracodes, assembler directives and
// interpretive opcodes. Used to tell a column-1 label from a column-1 opcode.
bool is_known_mnemonic(std::string_view word) noexcept;

// Statement with single-space separators and no trailing terminator; the form
// produced by the binary codec's decoder.
AgcStatement make_instruction(std::optional<std::string> label, std::string opcode,
                              std::vector<std::string> operands,
                              std::optional<std::string> comment = std::nullopt);
AgcStatement make_comment(std::string text);
AgcStatement make_blank();

// Sets line numbers 1..n and "\n" terminators on all but the last statement.
void renumber(std::vector<AgcStatement>& statements);

struct SourceFileRecord {
    std::string name;
    std::size_t line_count = 0;
    std::size_t byte_size = 0;
    int historical_rating = 1;
    int technical_rating = 1;

    bool operator==(const SourceFileRecord&) const = default;
};

std::size_t count_lines(std::string_view text) noexcept;

struct CorpusEntry {
    std::string name;
    std::optional<std::string> bytes;  // nullopt when the file could not be read
    std::string read_error;
};

struct ScanResult {
    std::vector<SourceFileRecord> records;
    SourceFileRecord total{"Total", 0, 0, 1, 1};
    std::vector<std::pair<std::string, std::string>> errors;  // (name, message)
};

ScanResult scan_corpus(std::span<const CorpusEntry> entries);

// Reads every regular `.agc` file in `dir`, sorted by name.
std::vector<CorpusEntry> read_corpus_directory(const std::filesystem::path& dir);

struct FileSelection {
    std::vector<SourceFileRecord> full_preserve;
    std::vector<SourceFileRecord> tokenize_only;
};

inline constexpr int kPreserveThreshold = 4;

FileSelection select_files(std::span<const SourceFileRecord> records);

struct SectionSpec {
    std::string id;
    std::string source_file;
    std::string text;
    std::string note;
    bool curated = false;

    // Locator for non-curated sections: either start_label + statement_count
    // or first_line..last_line (1-based, inclusive).
    std::optional<std::string> start_label;
    std::size_t statement_count = 0;
    std::size_t first_line = 0;
    std::size_t last_line = 0;

    // Filled by extract_section.
    std::size_t line_count = 0;

    bool operator==(const SectionSpec&) const = default;
};

SectionSpec extract_section(std::span<const AgcStatement> statements, const SectionSpec& spec);

struct CorpusTotals {
    std::size_t line_count = 0;
    std::size_t byte_size = 0;
};

struct SelectionManifest {
    std::vector<SourceFileRecord> files;
    std::vector<SectionSpec> sections;
    std::optional<CorpusTotals> corpus_total;
    std::optional<std::string> source_dir;

    const SourceFileRecord* find_file(std::string_view name) const noexcept;

    // Throws InvalidInput on duplicate section ids, out-of-range ratings,
    // dangling source_file references or empty curated text.
    void validate() const;
};

SelectionManifest manifest_from_json(std::string_view json_text);
std::string manifest_to_json(const SelectionManifest& manifest);
SelectionManifest load_manifest(const std::filesystem::path& path);

// Section text for every manifest section. Curated sections pass through;
// located sections are sliced out of `<base_dir>/<source_dir>/<source_file>`.
struct ResolvedSelection {
    SelectionManifest manifest;
    std::vector<std::pair<std::string, std::vector<AgcStatement>>> loaded_files;

    const std::vector<AgcStatement>* statements_of(std::string_view file) const noexcept;
};

ResolvedSelection resolve_sections(const SelectionManifest& manifest,
                                   const std::filesystem::path& base_dir);

}  // namespace relicpress::corpus
