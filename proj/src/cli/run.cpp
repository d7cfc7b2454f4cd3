#include <CLI11.hpp>

#include "relicpress/cli.hpp"

namespace relicpress::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compress AGC source into a single-QR self-extracting page", "relicpress"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "Line and byte counts for a directory of .agc files");
    std::filesystem::path analyze_dir;
    std::optional<std::filesystem::path> analyze_manifest;
    analyze->add_option("dir", analyze_dir, "Corpus directory")->required();
    analyze->add_option("--manifest", analyze_manifest, "Take the critical file list from a manifest");

    auto* build = app.add_subcommand("build", "Build payload, QR images and report.tsv");
    RunConfig config;
    std::string strategy = "hybrid";
    std::string ecc = "L";
    std::string mode = "html";
    build->add_option("--manifest", config.manifest_path, "Selection manifest (JSON)")->required();
    build->add_option("--strategy", strategy, "binary, token or hybrid")->capture_default_str();
    build->add_option("--ecc", ecc, "L, M, Q or H")->capture_default_str();
    build->add_option("--mode", mode, "html or uri")->capture_default_str();
    build->add_option("--out", config.out_dir, "Output directory")->required();
    build->add_option("--corpus-dir", config.corpus_dir, "Base directory for located sections");
    build->add_option("--stub", config.stub_path, "Viewer script replacing the built-in one");
    build->add_option("--module-px", config.module_px, "Pixels per module")->check(CLI::Range(1, 64))->capture_default_str();
    build->add_option("--quiet-zone", config.quiet_zone, "Quiet zone in modules")->check(CLI::Range(0, 64))->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Check a build directory end to end");
    std::filesystem::path verify_dir;
    verify->add_option("dir", verify_dir, "Build output directory")->required();

    auto* report = app.add_subcommand("report", "Compare all strategies as TSV");
    std::filesystem::path report_manifest;
    report->add_option("--manifest", report_manifest, "Selection manifest (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "relicpress: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    if (*analyze) return cmd_analyze(analyze_dir, analyze_manifest, out, err);
    if (*verify) return cmd_verify(verify_dir, out, err);
    if (*report) return cmd_report(report_manifest, out, err);

    const auto s = codec::parse_strategy(strategy);
    const auto e = qr::parse_ecc(ecc);
    if (!s) {
        err << "relicpress: unknown strategy '" << strategy << "' (binary, token, hybrid)\n";
        return kUsage;
    }
    if (!e) {
        err << "relicpress: unknown ecc level '" << ecc << "' (L, M, Q, H)\n";
        return kUsage;
    }
    if (mode != "html" && mode != "uri") {
        err << "relicpress: unknown mode '" << mode << "' (html, uri)\n";
        return kUsage;
    }
    config.strategy = *s;
    config.ecc = *e;
    config.mode = mode == "html" ? payload::PayloadMode::RawHtml : payload::PayloadMode::DataUri;
    return cmd_build(config, out, err);
}

}  // namespace relicpress::cli
