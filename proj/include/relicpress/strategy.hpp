#pragma once

// The three compression strategies and their comparison table.
//
//   FullBinary     15-bit word image of every critical-file instruction, deflated
//   TokenizedText  tokenized landing, alarm and P70 sections, deflated
//   Hybrid         sections verbatim in the page, tokenize-only files deflated
//
// Every strategy ends in a complete payload; compressed_size is its total_bytes.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relicpress/binary_codec.hpp"
#include "relicpress/corpus.hpp"
#include "relicpress/deflate.hpp"
#include "relicpress/payload.hpp"
#include "relicpress/token_dictionary.hpp"

namespace relicpress::codec {

enum class Strategy { FullBinary, TokenizedText, Hybrid };

inline constexpr std::array<Strategy, 3> kAllStrategies{Strategy::FullBinary, Strategy::TokenizedText,
                                                        Strategy::Hybrid};

std::string_view display_name(Strategy s) noexcept;  // "Full Binary", ...
std::string_view cli_name(Strategy s) noexcept;      // "binary", "token", "hybrid"
std::optional<Strategy> parse_strategy(std::string_view name) noexcept;

struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    /// Reduced by gcd. Throws InvalidInput for a zero denominator.
    static Ratio of(std::uint64_t num, std::uint64_t den);

    /// num/den rounded half-to-even, computed exactly in integers.
    std::uint64_t rounded() const noexcept;

    /// "N:1" with N = rounded().
    std::string display() const;

    bool operator==(const Ratio&) const = default;
};

struct StrategyResult {
    Strategy strategy = Strategy::Hybrid;
    std::size_t compressed_size = 0;      // final payload bytes
    std::size_t source_bytes = 0;         // ratio numerator
    Ratio ratio;
    std::size_t preserved_bytes = 0;      // critical-file bytes recoverable verbatim
    double pct_critical_preserved = 0.0;  // preserved_bytes / critical-file bytes
    double pct_total = 0.0;               // preserved_bytes / corpus bytes

    bool operator==(const StrategyResult&) const = default;
};

struct BuildOptions {
    payload::PayloadMode mode = payload::PayloadMode::RawHtml;
    std::optional<std::string> stub;  // defaults to payload::default_viewer_stub()
    DeflateOptions deflate;
};

struct StrategyOutput {
    StrategyResult result;
    CompressedBlob blob;
    std::string core;                           // inflated blob contents
    std::string expanded_core;                  // what the core expands to, built from the source text
    TokenDictionary dict;                       // as embedded
    std::vector<corpus::SectionSpec> embedded;  // sections stored verbatim in the page
    std::vector<corpus::SectionSpec> covered;   // sections represented in the blob or the page
    payload::PayloadArtifact artifact;
};

/// `book` is built from the encoded statements when null. Throws
/// EmptySelection when the manifest yields nothing to encode.
StrategyOutput run_strategy(Strategy strategy, const corpus::ResolvedSelection& selection,
                            const TokenDictionary& dict, const Codebook* book = nullptr,
                            const BuildOptions& options = {});

/// One row per strategy in kAllStrategies order.
std::vector<StrategyResult> compare_strategies(const corpus::ResolvedSelection& selection,
                                               const TokenDictionary& dict, const Codebook* book = nullptr,
                                               const BuildOptions& options = {});

/// Entries whose token occurs as a one-character word of `tokenized`.
TokenDictionary prune_dictionary(const TokenDictionary& dict, std::string_view tokenized);

/// Statements a binary round trip reproduces exactly: instructions in
/// single-space canonical form with comments, blanks and opaque lines dropped.
std::vector<corpus::AgcStatement> canonical_instructions(std::span<const corpus::AgcStatement> statements);

// Reference sizes and ratios, printed beside the measured ones.
struct StatedRow {
    Strategy strategy;
    std::size_t size;
    std::uint64_t ratio;
};
inline constexpr std::size_t kStatedCriticalBytes = 83500;
inline constexpr std::array<StatedRow, 3> kStatedRows{{
    {Strategy::FullBinary, 3072, 27},
    {Strategy::TokenizedText, 2867, 22},
    {Strategy::Hybrid, 1434, 15},
}};

/// Whether a stated ratio follows from the stated critical bytes and size.
bool stated_ratio_consistent(const StatedRow& row) noexcept;

/// Tab-separated comparison table with the stated figures alongside.
std::string report_tsv(const std::vector<StrategyResult>& rows);

}  // namespace relicpress::codec
