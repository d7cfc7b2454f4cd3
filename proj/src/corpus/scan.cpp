#include <algorithm>
#include <fstream>
#include <iterator>
#include <system_error>

#include "relicpress/corpus.hpp"

namespace relicpress::corpus {

std::size_t count_lines(std::string_view text) noexcept {
    if (text.empty()) return 0;
    const auto newlines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
    return newlines + (text.back() == '\n' ? 0 : 1);
}

ScanResult scan_corpus(std::span<const CorpusEntry> entries) {
    ScanResult result;
    for (const auto& entry : entries) {
        if (!entry.bytes) {
            result.errors.emplace_back(entry.name, entry.read_error.empty() ? "unreadable" : entry.read_error);
            continue;
        }
        SourceFileRecord rec;
        rec.name = entry.name;
        rec.line_count = count_lines(*entry.bytes);
        rec.byte_size = entry.bytes->size();
        result.total.line_count += rec.line_count;
        result.total.byte_size += rec.byte_size;
        result.records.push_back(std::move(rec));
    }
    return result;
}

std::vector<CorpusEntry> read_corpus_directory(const std::filesystem::path& dir) {
    std::vector<CorpusEntry> entries;
    std::error_code ec;
    for (const auto& item : std::filesystem::directory_iterator(dir, ec)) {
        if (item.path().extension() != ".agc") continue;
        CorpusEntry entry;
        entry.name = item.path().filename().string();
        std::error_code type_ec;
        if (!item.is_regular_file(type_ec)) {
            entry.read_error = "not a regular file";
            entries.push_back(std::move(entry));
            continue;
        }
        std::ifstream in(item.path(), std::ios::binary);
        if (!in) {
            entry.read_error = "cannot open";
        } else {
            entry.bytes.emplace(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
            if (in.bad()) {
                entry.bytes.reset();
                entry.read_error = "read failed";
            }
        }
        entries.push_back(std::move(entry));
    }
    std::sort(entries.begin(), entries.end(),
              [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
    return entries;
}

FileSelection select_files(std::span<const SourceFileRecord> records) {
    FileSelection sel;
    for (const auto& rec : records) {
        if (rec.historical_rating >= kPreserveThreshold && rec.technical_rating >= kPreserveThreshold)
            sel.full_preserve.push_back(rec);
        else
            sel.tokenize_only.push_back(rec);
    }
    return sel;
}

}  // namespace relicpress::corpus
