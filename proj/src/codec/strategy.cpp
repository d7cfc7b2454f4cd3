#include "relicpress/strategy.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>

#include "relicpress/error.hpp"

namespace relicpress::codec {

namespace {

using corpus::AgcStatement;
using corpus::ResolvedSelection;
using corpus::SectionSpec;

constexpr std::array<std::string_view, 3> kTokenizedFiles{
    "THE_LUNAR_LANDING.agc", "ALARM_AND_ABORT.agc", "P70-P71.agc"};

std::size_t critical_bytes(const corpus::SelectionManifest& m) {
    std::size_t total = 0;
    for (const auto& f : m.files) total += f.byte_size;
    return total;
}

std::size_t file_bytes(const corpus::SelectionManifest& m, const std::set<std::string>& names) {
    std::size_t total = 0;
    for (const auto& n : names)
        if (const auto* f = m.find_file(n)) total += f->byte_size;
    return total;
}

std::string join_texts(const std::vector<SectionSpec>& sections) {
    std::string out;
    for (std::size_t i = 0; i < sections.size(); ++i) {
        if (i) out += '\n';
        out += sections[i].text;
    }
    return out;
}

std::size_t text_bytes(const std::vector<SectionSpec>& sections) {
    std::size_t total = 0;
    for (const auto& s : sections) total += s.text.size();
    return total;
}

// Statements of a file: the loaded source when present, else its sections.
std::vector<AgcStatement> file_statements(const ResolvedSelection& sel, const std::string& name) {
    if (const auto* loaded = sel.statements_of(name)) return *loaded;
    std::vector<AgcStatement> out;
    for (const auto& s : sel.manifest.sections) {
        if (s.source_file != name) continue;
        auto part = corpus::parse_agc_source(s.text);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

struct Plan {
    CompressedBlob blob;
    std::string core;
    std::string expanded;
    TokenDictionary dict;
    std::vector<SectionSpec> embedded;
    std::vector<SectionSpec> covered;
    std::set<std::string> sources;
    std::size_t preserved = 0;
};

Plan plan_binary(const ResolvedSelection& sel, const Codebook* book, const DeflateOptions& opt, char escape) {
    Plan p;
    std::vector<AgcStatement> statements;
    for (const auto& f : sel.manifest.files) {
        auto part = canonical_instructions(file_statements(sel, f.name));
        statements.insert(statements.end(), part.begin(), part.end());
        p.sources.insert(f.name);
    }
    if (statements.empty()) throw Error(ErrorKind::EmptySelection, "no instructions to encode");
    corpus::renumber(statements);
    const Codebook local = book ? Codebook{} : Codebook::from_statements(statements);
    const Codebook& used = book ? *book : local;
    p.core = pack_binary_image(used, encode_binary(statements, used));
    p.expanded = corpus::serialize(statements);
    p.blob = compress(p.core, opt);
    p.dict = TokenDictionary({}, escape);
    p.covered = sel.manifest.sections;
    for (const auto& s : p.covered) {
        const auto canon = canonical_instructions(corpus::parse_agc_source(s.text));
        std::vector<AgcStatement> renum(canon.begin(), canon.end());
        corpus::renumber(renum);
        if (corpus::serialize(renum) == s.text) p.preserved += s.text.size();
    }
    return p;
}

Plan plan_tokenized(const ResolvedSelection& sel, const TokenDictionary& dict, const DeflateOptions& opt) {
    Plan p;
    for (const auto& s : sel.manifest.sections)
        if (std::find(kTokenizedFiles.begin(), kTokenizedFiles.end(), s.source_file) != kTokenizedFiles.end())
            p.covered.push_back(s);
    if (p.covered.empty()) p.covered = sel.manifest.sections;
    if (p.covered.empty()) throw Error(ErrorKind::EmptySelection, "no sections to tokenize");
    for (const auto& s : p.covered) p.sources.insert(s.source_file);
    p.expanded = join_texts(p.covered);
    const std::string tokenized = tokenize(p.expanded, dict);
    p.core = tokenized;
    p.blob = compress(tokenized, opt);
    p.dict = prune_dictionary(dict, tokenized);
    p.preserved = text_bytes(p.covered);
    return p;
}

Plan plan_hybrid(const ResolvedSelection& sel, const TokenDictionary& dict, const DeflateOptions& opt) {
    Plan p;
    p.embedded = sel.manifest.sections;
    p.covered = p.embedded;
    for (const auto& s : p.embedded) p.sources.insert(s.source_file);
    p.preserved = text_bytes(p.embedded);

    std::string connective;
    for (const auto& f : corpus::select_files(sel.manifest.files).tokenize_only) {
        const auto* loaded = sel.statements_of(f.name);
        if (!loaded) continue;
        connective += corpus::serialize(*loaded);
        p.sources.insert(f.name);
        p.preserved += f.byte_size;
    }
    if (p.embedded.empty() && connective.empty())
        throw Error(ErrorKind::EmptySelection, "no sections and no connective code");
    const std::string tokenized = tokenize(connective, dict);
    p.expanded = std::move(connective);
    p.core = tokenized;
    p.blob = compress(tokenized, opt);
    p.dict = prune_dictionary(dict, tokenized);
    return p;
}

double fraction(std::size_t num, std::size_t den) {
    if (den == 0) return 0.0;
    return std::min(1.0, static_cast<double>(num) / static_cast<double>(den));
}

}  // namespace

std::string_view display_name(Strategy s) noexcept {
    switch (s) {
        case Strategy::FullBinary: return "Full Binary";
        case Strategy::TokenizedText: return "Tokenized Text";
        case Strategy::Hybrid: return "Hybrid";
    }
    return "?";
}

std::string_view cli_name(Strategy s) noexcept {
    switch (s) {
        case Strategy::FullBinary: return "binary";
        case Strategy::TokenizedText: return "token";
        case Strategy::Hybrid: return "hybrid";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) noexcept {
    for (auto s : kAllStrategies)
        if (cli_name(s) == name) return s;
    return std::nullopt;
}

Ratio Ratio::of(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw Error(ErrorKind::InvalidInput, "ratio with zero denominator");
    const auto g = std::gcd(num, den);
    return {num / g, den / g};
}

std::uint64_t Ratio::rounded() const noexcept {
    const std::uint64_t q = num / den;
    const std::uint64_t r2 = (num % den) * 2;
    if (r2 > den) return q + 1;
    if (r2 == den) return q + (q & 1u);
    return q;
}

std::string Ratio::display() const { return std::to_string(rounded()) + ":1"; }

TokenDictionary prune_dictionary(const TokenDictionary& dict, std::string_view tokenized) {
    std::array<bool, 256> used{};
    constexpr std::string_view ws = " \t\n\r\v\f";
    std::size_t i = 0;
    while (i < tokenized.size()) {
        if (ws.find(tokenized[i]) != std::string_view::npos) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < tokenized.size() && ws.find(tokenized[j]) == std::string_view::npos) ++j;
        if (j - i == 1) used[static_cast<unsigned char>(tokenized[i])] = true;
        i = j;
    }
    return dict.subset([&](const TokenDictionary::Entry& e) { return used[static_cast<unsigned char>(e.first)]; });
}

std::vector<AgcStatement> canonical_instructions(std::span<const AgcStatement> statements) {
    std::vector<AgcStatement> out;
    for (const auto& st : statements)
        if (st.kind == corpus::StatementKind::Instruction)
            out.push_back(corpus::make_instruction(st.label, st.opcode, st.operands));
    return out;
}

StrategyOutput run_strategy(Strategy strategy, const ResolvedSelection& selection, const TokenDictionary& dict,
                            const Codebook* book, const BuildOptions& options) {
    if (selection.manifest.files.empty() && selection.manifest.sections.empty())
        throw Error(ErrorKind::EmptySelection, "manifest lists no files and no sections");

    Plan plan;
    switch (strategy) {
        case Strategy::FullBinary: plan = plan_binary(selection, book, options.deflate, dict.escape()); break;
        case Strategy::TokenizedText: plan = plan_tokenized(selection, dict, options.deflate); break;
        case Strategy::Hybrid: plan = plan_hybrid(selection, dict, options.deflate); break;
    }

    const std::string_view stub = options.stub ? std::string_view(*options.stub) : payload::default_viewer_stub();
    StrategyOutput out;
    out.artifact = payload::assemble_payload(plan.blob, plan.embedded, plan.dict, stub, options.mode);

    const auto& m = selection.manifest;
    const std::size_t critical = critical_bytes(m);
    const std::size_t corpus_bytes = m.corpus_total ? m.corpus_total->byte_size : critical;
    std::size_t source = file_bytes(m, plan.sources);
    if (source == 0) source = plan.preserved;

    auto& r = out.result;
    r.strategy = strategy;
    r.compressed_size = out.artifact.total_bytes;
    r.source_bytes = source;
    r.ratio = Ratio::of(source, r.compressed_size);
    r.preserved_bytes = plan.preserved;
    r.pct_critical_preserved = fraction(plan.preserved, critical);
    r.pct_total = fraction(plan.preserved, corpus_bytes);

    out.blob = std::move(plan.blob);
    out.core = std::move(plan.core);
    out.expanded_core = std::move(plan.expanded);
    out.dict = std::move(plan.dict);
    out.embedded = std::move(plan.embedded);
    out.covered = std::move(plan.covered);
    return out;
}

std::vector<StrategyResult> compare_strategies(const ResolvedSelection& selection, const TokenDictionary& dict,
                                               const Codebook* book, const BuildOptions& options) {
    std::vector<StrategyResult> rows;
    for (auto s : kAllStrategies) rows.push_back(run_strategy(s, selection, dict, book, options).result);
    return rows;
}

bool stated_ratio_consistent(const StatedRow& row) noexcept {
    return Ratio::of(kStatedCriticalBytes, row.size).rounded() == row.ratio;
}

std::string report_tsv(const std::vector<StrategyResult>& rows) {
    std::string out =
        "strategy\tcompressed_size\tsource_bytes\tratio\tpct_critical_preserved\tpct_total\t"
        "stated_size\tstated_ratio\tstated_ratio_recomputed\tconsistent?\n";
    char buf[64];
    for (const auto& r : rows) {
        out += std::string(display_name(r.strategy)) + "\t" + std::to_string(r.compressed_size) + "\t" +
               std::to_string(r.source_bytes) + "\t" + r.ratio.display() + "\t";
        std::snprintf(buf, sizeof buf, "%.4f\t%.4f\t", r.pct_critical_preserved * 100.0, r.pct_total * 100.0);
        out += buf;
        const auto stated = std::find_if(kStatedRows.begin(), kStatedRows.end(),
                                         [&](const StatedRow& s) { return s.strategy == r.strategy; });
        out += std::to_string(stated->size) + "\t" + std::to_string(stated->ratio) + ":1\t" +
               Ratio::of(kStatedCriticalBytes, stated->size).display() + "\t" +
               (stated_ratio_consistent(*stated) ? "yes" : "no") + "\n";
    }
    return out;
}

}  // namespace relicpress::codec
