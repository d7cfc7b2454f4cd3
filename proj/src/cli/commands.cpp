#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "relicpress/cli.hpp"
#include "relicpress/digest.hpp"
#include "relicpress/error.hpp"

namespace relicpress::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kReport = "report.tsv";
constexpr std::string_view kPgm = "qr.pgm";
constexpr std::string_view kSvg = "qr.svg";

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, std::string_view data) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + p.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(ErrorKind::Io, "short write to " + p.string());
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::BudgetExceeded:
        case ErrorKind::CapacityExceeded: return kBudget;
        default: return kUsage;
    }
}

std::string payload_name(payload::PayloadMode mode) {
    return mode == payload::PayloadMode::RawHtml ? "payload.html" : "payload.uri";
}

std::string percent(double f) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", f * 100.0);
    return buf;
}

// report.tsv: a result table, a blank line, then key<TAB>value... rows.
struct Report {
    std::map<std::string, std::string> values;
    std::vector<std::vector<std::string>> sections;  // id, bytes, fnv
};

std::vector<std::string> split_tabs(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        out.emplace_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
        if (tab == std::string_view::npos) return out;
        start = tab + 1;
    }
}

Report parse_report(std::string_view text) {
    Report r;
    std::istringstream in{std::string(text)};
    std::string line;
    bool body = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            body = true;
            continue;
        }
        if (!body) continue;
        auto cols = split_tabs(line);
        if (cols.size() < 2) throw Error(ErrorKind::InvalidInput, "report.tsv: malformed line '" + line + "'");
        if (cols[0] == "section") {
            if (cols.size() != 4) throw Error(ErrorKind::InvalidInput, "report.tsv: malformed section line");
            r.sections.push_back({cols[1], cols[2], cols[3]});
        } else {
            r.values[cols[0]] = cols[1];
        }
    }
    return r;
}

const std::string& need(const Report& r, const std::string& key) {
    const auto it = r.values.find(key);
    if (it == r.values.end()) throw Error(ErrorKind::InvalidInput, "report.tsv lacks '" + key + "'");
    return it->second;
}

int need_int(const Report& r, const std::string& key) {
    try {
        return std::stoi(need(r, key));
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::InvalidInput, "report.tsv: '" + key + "' is not a number");
    }
}

std::string first_difference(std::string_view a, std::string_view b) {
    const auto n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return "first difference at byte " + std::to_string(i);
    if (a.size() != b.size())
        return "lengths differ (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")";
    return "identical";
}

class Checks {
public:
    explicit Checks(std::ostream& out) : out_(out) {}

    void pass(std::string_view name) {
        out_ << "PASS\t" << name << "\n";
        ++passed_;
    }
    void fail(std::string_view name, std::string_view detail) {
        out_ << "FAIL\t" << name << "\t" << detail << "\n";
        ++failed_;
    }
    void expect(std::string_view name, bool ok, std::string_view detail) {
        ok ? pass(name) : fail(name, detail);
    }
    template <typename F>
    void run(std::string_view name, F&& f) {
        try {
            f();
        } catch (const Error& e) {
            fail(name, e.what());
        }
    }
    int finish() {
        out_ << "verify: " << passed_ << "/" << (passed_ + failed_) << " checks passed\n";
        return failed_ == 0 ? kOk : kVerifyFailed;
    }

private:
    std::ostream& out_;
    int passed_ = 0;
    int failed_ = 0;
};

}  // namespace

int cmd_analyze(const fs::path& corpus_dir, const std::optional<fs::path>& manifest, std::ostream& out,
                std::ostream& err) {
    try {
        if (!fs::is_directory(corpus_dir)) {
            err << "analyze: " << corpus_dir.string() << " is not a directory\n";
            return kUsage;
        }
        std::vector<std::string> critical(std::begin(kCriticalFiles), std::end(kCriticalFiles));
        if (manifest) {
            critical.clear();
            for (const auto& f : corpus::load_manifest(*manifest).files) critical.push_back(f.name);
        }
        const auto entries = corpus::read_corpus_directory(corpus_dir);
        const auto scan = corpus::scan_corpus(entries);
        for (const auto& [name, msg] : scan.errors) err << "analyze: " << name << ": " << msg << "\n";

        corpus::SourceFileRecord subtotal{"Critical Files Subtotal", 0, 0, 1, 1};
        corpus::SourceFileRecord other{"Other AGC files", 0, 0, 1, 1};
        out << "name\tlines\tbytes\n";
        for (const auto& name : critical) {
            const auto it = std::find_if(scan.records.begin(), scan.records.end(),
                                         [&](const corpus::SourceFileRecord& r) { return r.name == name; });
            if (it == scan.records.end()) {
                err << "analyze: critical file " << name << " not found\n";
                continue;
            }
            out << it->name << "\t" << it->line_count << "\t" << it->byte_size << "\n";
            subtotal.line_count += it->line_count;
            subtotal.byte_size += it->byte_size;
        }
        other.line_count = scan.total.line_count - subtotal.line_count;
        other.byte_size = scan.total.byte_size - subtotal.byte_size;
        for (const corpus::SourceFileRecord* r : std::initializer_list<const corpus::SourceFileRecord*>{&subtotal, &other, &scan.total})
            out << r->name << "\t" << r->line_count << "\t" << r->byte_size << "\n";
        return kOk;
    } catch (const Error& e) {
        err << "analyze: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_build(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const auto manifest = corpus::load_manifest(config.manifest_path);
        const fs::path base = config.corpus_dir ? *config.corpus_dir : config.manifest_path.parent_path();
        const auto selection = corpus::resolve_sections(manifest, base);

        codec::BuildOptions options;
        options.mode = config.mode;
        if (config.stub_path) options.stub = read_file(*config.stub_path);
        const auto built = codec::run_strategy(config.strategy, selection, codec::TokenDictionary::standard(),
                                               nullptr, options);

        const qr::QrSymbolSpec spec{0, config.ecc, config.module_px, config.quiet_zone};
        const auto& html = built.artifact.html;
        const auto symbol = qr::encode(codec::as_bytes(html), spec);

        fs::create_directories(config.out_dir);
        const std::string pname = payload_name(config.mode);
        write_file(config.out_dir / pname, html);
        write_file(config.out_dir / kSvg, qr::render(symbol.matrix, spec, qr::ImageFormat::Svg));
        write_file(config.out_dir / kPgm, qr::render(symbol.matrix, spec, qr::ImageFormat::Pgm));

        const auto& r = built.result;
        std::string report =
            "strategy\tcompressed_size\tsource_bytes\tratio\tpct_critical_preserved\tpct_total\tqr_version\n";
        report += std::string(codec::display_name(r.strategy)) + "\t" + std::to_string(r.compressed_size) + "\t" +
                  std::to_string(r.source_bytes) + "\t" + r.ratio.display() + "\t" +
                  percent(r.pct_critical_preserved) + "\t" + percent(r.pct_total) + "\t" +
                  std::to_string(symbol.version) + "\n\n";
        auto kv = [&](std::string_view k, const std::string& v) { report += std::string(k) + "\t" + v + "\n"; };
        kv("strategy", std::string(codec::cli_name(r.strategy)));
        kv("payload_file", pname);
        kv("payload_bytes", std::to_string(html.size()));
        kv("payload_fnv", hex64(fnv1a64(html)));
        kv("qr_version", std::to_string(symbol.version));
        kv("ecc", std::string(1, qr::ecc_letter(symbol.ecc)));
        kv("mask", std::to_string(symbol.mask));
        kv("mode", config.mode == payload::PayloadMode::RawHtml ? "html" : "uri");
        kv("module_px", std::to_string(config.module_px));
        kv("quiet_zone", std::to_string(config.quiet_zone));
        kv("core_bytes", std::to_string(built.core.size()));
        kv("core_fnv", hex64(fnv1a64(built.core)));
        kv("expanded_core_fnv", hex64(fnv1a64(built.expanded_core)));
        for (const auto& row : payload::budget_report(built.artifact)) kv("budget_" + row.part, std::to_string(row.bytes));
        for (const auto& s : built.embedded)
            report += "section\t" + s.id + "\t" + std::to_string(s.text.size()) + "\t" + hex64(fnv1a64(s.text)) + "\n";
        write_file(config.out_dir / kReport, report);

        out << "built " << codec::cli_name(r.strategy) << ": " << html.size() << " bytes, QR version "
            << symbol.version << "-" << qr::ecc_letter(symbol.ecc) << " (" << symbol.matrix.size() << "x"
            << symbol.matrix.size() << "), ratio " << r.ratio.display() << " -> " << config.out_dir.string()
            << "\n";
        return kOk;
    } catch (const Error& e) {
        err << "build: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_verify(const fs::path& dir, std::ostream& out, std::ostream& err) {
    if (!fs::is_directory(dir)) {
        err << "verify: " << dir.string() << " is not a directory\n";
        return kUsage;
    }
    Checks checks(out);

    std::optional<Report> report;
    checks.run("artifact report.tsv", [&] {
        if (!fs::exists(dir / kReport)) throw Error(ErrorKind::MissingArtifact, std::string(kReport));
        report = parse_report(read_file(dir / kReport));
        checks.pass("artifact report.tsv");
    });
    if (!report) return checks.finish();

    std::optional<std::string> html;
    std::optional<std::string> pgm;
    std::optional<std::string> svg;
    auto load = [&](std::string_view name, std::optional<std::string>& slot) {
        const std::string label = "artifact " + std::string(name);
        checks.run(label, [&] {
            if (!fs::exists(dir / name)) throw Error(ErrorKind::MissingArtifact, std::string(name));
            slot = read_file(dir / name);
            checks.pass(label);
        });
    };
    std::string pname;
    checks.run("report fields", [&] {
        pname = need(*report, "payload_file");
        if (pname != "payload.html" && pname != "payload.uri")
            throw Error(ErrorKind::InvalidInput, "unexpected payload_file " + pname);
        checks.pass("report fields");
    });
    if (pname.empty()) return checks.finish();
    load(pname, html);
    load(kPgm, pgm);
    load(kSvg, svg);

    checks.run("payload digest", [&] {
        if (!html) throw Error(ErrorKind::MissingArtifact, pname);
        const bool ok = std::to_string(html->size()) == need(*report, "payload_bytes") &&
                        hex64(fnv1a64(*html)) == need(*report, "payload_fnv");
        checks.expect("payload digest", ok, "payload differs from the build record");
    });

    std::optional<qr::QrMatrix> from_pgm;
    checks.run("qr decode", [&] {
        if (!pgm || !html) throw Error(ErrorKind::MissingArtifact, !pgm ? std::string(kPgm) : pname);
        const int px = need_int(*report, "module_px");
        const int quiet = need_int(*report, "quiet_zone");
        from_pgm = qr::read_pgm(*pgm, px, quiet);
        const auto decoded = qr::decode(*from_pgm);
        const std::string bytes = codec::to_string(decoded.payload);
        checks.expect("qr decode", bytes == *html, "symbol content vs " + pname + ": " + first_difference(bytes, *html));
        const auto ecc = qr::parse_ecc(need(*report, "ecc"));
        const bool version_ok = ecc && decoded.ecc == *ecc && decoded.version == need_int(*report, "qr_version") &&
                                decoded.version == qr::select_version(html->size(), *ecc);
        checks.expect("qr version", version_ok,
                      "symbol is " + std::to_string(decoded.version) + "-" + qr::ecc_letter(decoded.ecc) +
                          ", expected the smallest version fitting the payload");
    });

    checks.run("qr svg", [&] {
        if (!svg || !from_pgm) throw Error(ErrorKind::MissingArtifact, !svg ? std::string(kSvg) : std::string(kPgm));
        const auto m = qr::read_svg(*svg, need_int(*report, "module_px"), need_int(*report, "quiet_zone"));
        checks.expect("qr svg", m == *from_pgm, "svg and pgm renders disagree");
    });

    checks.run("extraction", [&] {
        if (!html) throw Error(ErrorKind::MissingArtifact, pname);
        const auto strategy = codec::parse_strategy(need(*report, "strategy"));
        if (!strategy) throw Error(ErrorKind::InvalidInput, "unknown strategy in report.tsv");
        auto doc = payload::parse_payload(*html);
        doc.tokenized_core = codec::to_string(codec::inflate_raw(doc.blob));
        checks.expect("core digest", hex64(fnv1a64(doc.tokenized_core)) == need(*report, "core_fnv"),
                      "inflated core differs from the build record");
        std::string expanded;
        if (*strategy == codec::Strategy::FullBinary) {
            const auto [book, bits] = codec::unpack_binary_image(doc.tokenized_core);
            expanded = corpus::serialize(codec::decode_binary(bits, book));
        } else {
            expanded = codec::detokenize(doc.tokenized_core, doc.dict);
        }
        checks.expect("expanded core", hex64(fnv1a64(expanded)) == need(*report, "expanded_core_fnv"),
                      "expanded core differs from the source text");

        bool sections_ok = doc.sections.size() == report->sections.size();
        std::string detail = sections_ok ? "" : "section count differs";
        for (std::size_t i = 0; sections_ok && i < doc.sections.size(); ++i) {
            const auto& [id, text] = doc.sections[i];
            const auto& want = report->sections[i];
            if (id != want[0] || std::to_string(text.size()) != want[1] || hex64(fnv1a64(text)) != want[2]) {
                sections_ok = false;
                detail = "section " + want[0] + " differs";
            }
        }
        if (sections_ok) {
            const auto rendered = payload::render_document(doc.sections, *strategy == codec::Strategy::FullBinary
                                                                             ? std::string_view{}
                                                                             : std::string_view(expanded));
            for (const auto& [id, text] : doc.sections)
                if (rendered.find("\n# --- " + id + " ---\n" + text + "\n") == std::string::npos) {
                    sections_ok = false;
                    detail = "rendered document lacks the " + id + " block";
                }
        }
        checks.expect("golden sections", sections_ok, detail);
    });

    return checks.finish();
}

int cmd_report(const fs::path& manifest_path, std::ostream& out, std::ostream& err) {
    try {
        const auto manifest = corpus::load_manifest(manifest_path);
        const auto selection = corpus::resolve_sections(manifest, manifest_path.parent_path());
        out << codec::report_tsv(codec::compare_strategies(selection, codec::TokenDictionary::standard()));
        return kOk;
    } catch (const Error& e) {
        err << "report: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace relicpress::cli
