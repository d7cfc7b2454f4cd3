#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "relicpress/cli.hpp"

using namespace relicpress;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "relicpress");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("relicpress_cli_" + name);
    fs::remove_all(p);
    return p;
}

const std::string kManifest = RELICPRESS_DATA_DIR "/curated_manifest.json";

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("build then verify") {
    for (const std::string strategy : {"binary", "token", "hybrid"}) {
        for (const std::string mode : {"html", "uri"}) {
            const auto dir = scratch(strategy + mode);
            const auto b = run({"build", "--manifest", kManifest, "--strategy", strategy, "--mode", mode, "--ecc", "Q",
                                "--out", dir.string()});
            CAPTURE(b.err);
            REQUIRE(b.code == cli::kOk);
            for (const char* f : {"qr.svg", "qr.pgm", "report.tsv"}) CHECK(fs::exists(dir / f));
            CHECK(fs::exists(dir / (mode == "html" ? "payload.html" : "payload.uri")));
            const auto v = run({"verify", dir.string()});
            CAPTURE(v.out);
            CHECK(v.code == cli::kOk);
            CHECK(v.out.find("FAIL") == std::string::npos);
            fs::remove_all(dir);
        }
    }
}

TEST_CASE("build output is byte-deterministic") {
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    REQUIRE(run({"build", "--manifest", kManifest, "--out", a.string()}).code == 0);
    REQUIRE(run({"build", "--manifest", kManifest, "--out", b.string()}).code == 0);
    for (const char* f : {"payload.html", "qr.svg", "qr.pgm", "report.tsv"}) CHECK(slurp(a / f) == slurp(b / f));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("verify catches a single flipped byte") {
    const auto dir = scratch("flip");
    REQUIRE(run({"build", "--manifest", kManifest, "--out", dir.string()}).code == 0);
    auto html = slurp(dir / "payload.html");
    html[html.size() / 2] ^= 0x01;
    std::ofstream(dir / "payload.html", std::ios::binary | std::ios::trunc) << html;
    const auto v = run({"verify", dir.string()});
    CHECK(v.code == cli::kVerifyFailed);
    CHECK(v.out.find("FAIL\tqr decode\tsymbol content vs payload.html: first difference at byte " +
                     std::to_string(html.size() / 2)) != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("verify reports a missing artifact") {
    const auto dir = scratch("missing");
    REQUIRE(run({"build", "--manifest", kManifest, "--out", dir.string()}).code == 0);
    fs::remove(dir / "qr.pgm");
    const auto v = run({"verify", dir.string()});
    CHECK(v.code == cli::kVerifyFailed);
    CHECK(v.out.find("FAIL\tartifact qr.pgm\tMissingArtifact") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("verify catches a truncated symbol image") {
    const auto dir = scratch("pgm");
    REQUIRE(run({"build", "--manifest", kManifest, "--out", dir.string()}).code == 0);
    auto pgm = slurp(dir / "qr.pgm");
    pgm.resize(pgm.size() - 5);
    std::ofstream(dir / "qr.pgm", std::ios::binary | std::ios::trunc) << pgm;
    const auto v = run({"verify", dir.string()});
    CHECK(v.code == cli::kVerifyFailed);
    fs::remove_all(dir);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"build", "--manifest", kManifest, "--strategy", "zip", "--out", "x"}).code == cli::kUsage);
    CHECK(run({"build", "--manifest", kManifest, "--ecc", "Z", "--out", "x"}).code == cli::kUsage);
    CHECK(run({"build", "--manifest", kManifest, "--mode", "pdf", "--out", "x"}).code == cli::kUsage);
    CHECK(run({"build", "--manifest", "/nonexistent.json", "--out", "x"}).code == cli::kUsage);
    CHECK(run({"verify", "/nonexistent_dir"}).code == cli::kUsage);
    CHECK(run({"analyze", "/nonexistent_dir"}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("oversized payload exits 3") {
    const auto dir = scratch("big");
    const auto stub = dir.string() + "_stub.js";
    std::ofstream(stub) << std::string(4000, 'x');
    const auto r = run({"build", "--manifest", kManifest, "--stub", stub, "--out", dir.string()});
    CHECK(r.code == cli::kBudget);
    CHECK(r.err.find("BudgetExceeded") != std::string::npos);
    // fits 40-L but not any H symbol
    std::ofstream(stub, std::ios::trunc) << std::string(1500, 'x');
    CHECK(run({"build", "--manifest", kManifest, "--stub", stub, "--ecc", "H", "--out", dir.string()}).code ==
          cli::kBudget);
    fs::remove(stub);
    fs::remove_all(dir);
}

TEST_CASE("report and analyze") {
    const auto r = run({"report", "--manifest", kManifest});
    CHECK(r.code == 0);
    CHECK(r.out.starts_with("strategy\tcompressed_size\t"));
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);

    const auto dir = scratch("analyze");
    fs::create_directories(dir);
    std::ofstream(dir / "THE_LUNAR_LANDING.agc") << "P63LM\tTC\tPHASCHNG\n\t\tOCT\t04024\n";
    std::ofstream(dir / "OTHER.agc") << "# comment\n";
    const auto a = run({"analyze", dir.string()});
    CHECK(a.code == 0);
    CHECK(a.out == "name\tlines\tbytes\n"
                   "THE_LUNAR_LANDING.agc\t2\t30\n"
                   "Critical Files Subtotal\t2\t30\n"
                   "Other AGC files\t1\t10\n"
                   "Total\t3\t40\n");
    fs::remove_all(dir);
}
