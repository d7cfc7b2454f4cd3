#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>

#include <json.hpp>

#include "relicpress/corpus.hpp"
#include "relicpress/error.hpp"

namespace relicpress::corpus {

using json = nlohmann::ordered_json;

SectionSpec extract_section(std::span<const AgcStatement> statements, const SectionSpec& spec) {
    if (spec.curated) return spec;

    std::size_t begin = 0;
    std::size_t end = 0;
    if (spec.start_label) {
        auto it = std::find_if(statements.begin(), statements.end(),
                               [&](const AgcStatement& st) { return st.label == spec.start_label; });
        if (it == statements.end())
            throw Error(ErrorKind::MissingSection, spec.id + ": label '" + *spec.start_label + "' not found");
        if (spec.statement_count == 0)
            throw Error(ErrorKind::InvalidInput, spec.id + ": statement_count must be positive");
        begin = static_cast<std::size_t>(it - statements.begin());
        end = begin + spec.statement_count;
        if (end > statements.size())
            throw Error(ErrorKind::MissingSection, spec.id + ": only " +
                                                       std::to_string(statements.size() - begin) +
                                                       " statements after '" + *spec.start_label + "'");
    } else if (spec.first_line > 0) {
        if (spec.last_line < spec.first_line || spec.last_line > statements.size())
            throw Error(ErrorKind::MissingSection, spec.id + ": line range " + std::to_string(spec.first_line) +
                                                       "-" + std::to_string(spec.last_line) +
                                                       " outside source");
        begin = spec.first_line - 1;
        end = spec.last_line;
    } else {
        throw Error(ErrorKind::MissingSection, spec.id + ": no locator and not curated");
    }

    SectionSpec out = spec;
    out.text = serialize(statements.subspan(begin, end - begin));
    const std::string& last_eol = statements[end - 1].eol;
    out.text.resize(out.text.size() - last_eol.size());
    out.line_count = end - begin;
    return out;
}

const SourceFileRecord* SelectionManifest::find_file(std::string_view name) const noexcept {
    for (const auto& f : files)
        if (f.name == name) return &f;
    return nullptr;
}

void SelectionManifest::validate() const {
    for (const auto& f : files) {
        if (f.historical_rating < 1 || f.historical_rating > 5 || f.technical_rating < 1 || f.technical_rating > 5)
            throw Error(ErrorKind::InvalidInput, "ratings for " + f.name + " must be within [1,5]");
    }
    std::set<std::string> ids;
    for (const auto& s : sections) {
        if (s.id.empty()) throw Error(ErrorKind::InvalidInput, "section with empty id");
        if (!ids.insert(s.id).second) throw Error(ErrorKind::InvalidInput, "duplicate section id " + s.id);
        if (!s.curated && find_file(s.source_file) == nullptr)
            throw Error(ErrorKind::InvalidInput,
                        "section " + s.id + " names unknown file '" + s.source_file + "' and is not curated");
        if (s.curated && s.text.empty())
            throw Error(ErrorKind::InvalidInput, "curated section " + s.id + " has empty text");
    }
}

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return fallback;
    return it->get<T>();
}

}  // namespace

SelectionManifest manifest_from_json(std::string_view json_text) {
    SelectionManifest m;
    try {
        const json j = json::parse(json_text);
        for (const auto& f : j.at("files")) {
            SourceFileRecord r;
            r.name = f.at("name").get<std::string>();
            r.line_count = get_or<std::size_t>(f, "line_count", 0);
            r.byte_size = get_or<std::size_t>(f, "byte_size", 0);
            r.historical_rating = get_or<int>(f, "historical_rating", 1);
            r.technical_rating = get_or<int>(f, "technical_rating", 1);
            m.files.push_back(std::move(r));
        }
        for (const auto& s : j.at("sections")) {
            SectionSpec spec;
            spec.id = s.at("id").get<std::string>();
            spec.source_file = get_or<std::string>(s, "source_file", "");
            spec.text = get_or<std::string>(s, "text", "");
            spec.note = get_or<std::string>(s, "note", "");
            spec.curated = get_or<bool>(s, "curated", false);
            if (s.contains("start_label")) spec.start_label = s["start_label"].get<std::string>();
            spec.statement_count = get_or<std::size_t>(s, "statement_count", 0);
            spec.first_line = get_or<std::size_t>(s, "first_line", 0);
            spec.last_line = get_or<std::size_t>(s, "last_line", 0);
            spec.line_count = spec.curated ? count_lines(spec.text) : 0;
            m.sections.push_back(std::move(spec));
        }
        if (auto it = j.find("corpus_total"); it != j.end()) {
            m.corpus_total = CorpusTotals{it->at("line_count").get<std::size_t>(),
                                          it->at("byte_size").get<std::size_t>()};
        }
        if (auto it = j.find("source_dir"); it != j.end()) m.source_dir = it->get<std::string>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("manifest: ") + e.what());
    }
    m.validate();
    return m;
}

std::string manifest_to_json(const SelectionManifest& m) {
    json j;
    j["files"] = json::array();
    for (const auto& f : m.files) {
        j["files"].push_back({{"name", f.name},
                              {"line_count", f.line_count},
                              {"byte_size", f.byte_size},
                              {"historical_rating", f.historical_rating},
                              {"technical_rating", f.technical_rating}});
    }
    j["sections"] = json::array();
    for (const auto& s : m.sections) {
        json e = {{"id", s.id}, {"source_file", s.source_file}, {"text", s.text}, {"note", s.note}};
        if (s.curated) e["curated"] = true;
        if (s.start_label) {
            e["start_label"] = *s.start_label;
            e["statement_count"] = s.statement_count;
        } else if (s.first_line > 0) {
            e["first_line"] = s.first_line;
            e["last_line"] = s.last_line;
        }
        j["sections"].push_back(std::move(e));
    }
    if (m.corpus_total)
        j["corpus_total"] = {{"line_count", m.corpus_total->line_count}, {"byte_size", m.corpus_total->byte_size}};
    if (m.source_dir) j["source_dir"] = *m.source_dir;
    return j.dump(2) + "\n";
}

SelectionManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read manifest " + path.string());
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return manifest_from_json(text);
}

const std::vector<AgcStatement>* ResolvedSelection::statements_of(std::string_view file) const noexcept {
    for (const auto& [name, statements] : loaded_files)
        if (name == file) return &statements;
    return nullptr;
}

ResolvedSelection resolve_sections(const SelectionManifest& manifest, const std::filesystem::path& base_dir) {
    manifest.validate();
    ResolvedSelection out;
    out.manifest = manifest;
    const std::filesystem::path source_root = base_dir / manifest.source_dir.value_or(".");

    // Source files are optional at desk scale; load whichever are present.
    for (const auto& file : manifest.files) {
        std::ifstream in(source_root / file.name, std::ios::binary);
        if (!in) continue;
        const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        out.loaded_files.emplace_back(file.name, parse_agc_source(text));
    }

    for (auto& section : out.manifest.sections) {
        if (section.curated) continue;
        const auto* statements = out.statements_of(section.source_file);
        if (statements == nullptr)
            throw Error(ErrorKind::MissingSection,
                        section.id + ": source file " + (source_root / section.source_file).string() + " not available");
        section = extract_section(*statements, section);
    }
    return out;
}

}  // namespace relicpress::corpus
