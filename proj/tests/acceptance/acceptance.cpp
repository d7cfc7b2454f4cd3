// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <zlib.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "relicpress/binary_codec.hpp"
#include "relicpress/cli.hpp"
#include "relicpress/deflate.hpp"
#include "relicpress/error.hpp"
#include "relicpress/qr.hpp"
#include "relicpress/strategy.hpp"
#include "relicpress/token_dictionary.hpp"

using namespace relicpress;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kManifest = RELICPRESS_DATA_DIR "/curated_manifest.json";

const corpus::ResolvedSelection& curated() {
    static const auto sel = corpus::resolve_sections(corpus::load_manifest(kManifest), RELICPRESS_DATA_DIR);
    return sel;
}

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
    bool ok;
    std::string detail;
};

int failures = 0;

void criterion(const char* name, const std::function<Outcome()>& body) {
    Outcome r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (r.ok ? "PASS" : "FAIL") << "  " << name << "  (" << r.detail << ")\n" << std::flush;
    failures += r.ok ? 0 : 1;
}

std::string fmt(double v, const char* f = "%.3f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string random_text(std::mt19937& rng) {
    static const char* pieces[] = {"TC", "TS", "CAF", "CS", "CA", "BANKCALL", "a", "b", "~", "~~", "a~", "P63LM",
                                   "TCF", "Z", "N", "-1", "#", "\xC3\xA9", "TC~", "CAFX", "xTC", "DCA", "MP"};
    static const char* spaces[] = {" ", "  ", "\t", "\n", "\r\n", "\v"};
    std::string out;
    const int n = static_cast<int>(rng() % 24);
    for (int i = 0; i < n; ++i) {
        out += pieces[rng() % std::size(pieces)];
        out += spaces[rng() % std::size(spaces)];
    }
    if (rng() % 2 && !out.empty()) out.pop_back();
    return out;
}

std::vector<corpus::AgcStatement> random_program(std::mt19937& rng) {
    static const char* ops[] = {"TC", "CAF", "TS", "CA", "EXTEND", "DCA", "VLOAD", "STCALL", "INHINT", "TCF"};
    static const char* names[] = {"Q", "L", "ZERO", "BANKCALL", "R02BOTH", "+1", "DSPTAB+11D", "OCT40400", "TLAND"};
    std::vector<corpus::AgcStatement> out;
    const int n = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
        std::optional<std::string> label;
        if (rng() % 3 == 0) label = "L" + std::to_string(rng() % 20);
        std::vector<std::string> operands(rng() % 5);
        for (auto& o : operands) o = names[rng() % std::size(names)];
        out.push_back(corpus::make_instruction(label, ops[rng() % std::size(ops)], operands));
    }
    corpus::renumber(out);
    return out;
}

std::vector<std::uint8_t> zlib_inflate_raw(std::span<const std::uint8_t> in, std::size_t expect) {
    std::vector<std::uint8_t> out(expect + 1);
    z_stream zs{};
    if (inflateInit2(&zs, -15) != Z_OK) throw std::runtime_error("inflateInit2");
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&zs, Z_FINISH);
    out.resize(zs.total_out);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END) throw std::runtime_error("zlib inflate rc=" + std::to_string(rc));
    return out;
}

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
    args.insert(args.begin(), "relicpress");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str() + err.str();
    return code;
}

}  // namespace

int main() {
    const auto& dict = codec::TokenDictionary::standard();

    criterion("hybrid size <= 1600 bytes, < 1 s", [&]() -> Outcome {
        const auto t = Clock::now();
        const auto out = codec::run_strategy(codec::Strategy::Hybrid, curated(), dict);
        const double s = seconds_since(t);
        const auto n = out.result.compressed_size;
        return {n <= 1600 && s < 1.0, std::to_string(n) + " bytes in " + fmt(s) + " s"};
    });

    criterion("every strategy fits version 40-L", [&]() -> Outcome {
        const auto cap = qr::capacity(40, qr::Ecc::L);
        std::string detail = "cap " + std::to_string(cap) + ":";
        bool ok = cap == payload::kBudgetCap;
        for (auto mode : {payload::PayloadMode::RawHtml, payload::PayloadMode::DataUri}) {
            codec::BuildOptions opt;
            opt.mode = mode;
            for (const auto& r : codec::compare_strategies(curated(), dict, nullptr, opt)) {
                ok = ok && r.compressed_size <= cap && qr::select_version(r.compressed_size, qr::Ecc::L) <= 40;
                detail += " " + std::string(codec::cli_name(r.strategy)) +
                          (mode == payload::PayloadMode::RawHtml ? "/html=" : "/uri=") +
                          std::to_string(r.compressed_size);
            }
        }
        // an oversized stub must stop the build rather than emit an unscannable page
        codec::BuildOptions big;
        big.stub = std::string(cap, 'x');
        try {
            codec::run_strategy(codec::Strategy::Hybrid, curated(), dict, nullptr, big);
            ok = false;
            detail += "; oversized build did not fail";
        } catch (const Error& e) {
            ok = ok && e.kind() == ErrorKind::BudgetExceeded;
        }
        return {ok, detail};
    });

    criterion("ratio 83500/3072 prints 27:1; 22:1 and 15:1 flagged", [&]() -> Outcome {
        const auto shown = codec::Ratio::of(83500, 3072).display();
        const auto tsv = codec::report_tsv(codec::compare_strategies(curated(), dict));
        const bool ok = shown == "27:1" && tsv.find("\t3072\t27:1\t27:1\tyes\n") != std::string::npos &&
                        tsv.find("\t2867\t22:1\t29:1\tno\n") != std::string::npos &&
                        tsv.find("\t1434\t15:1\t58:1\tno\n") != std::string::npos;
        return {ok, "ratio " + shown + ", flags yes/no/no"};
    });

    criterion("tokenization round trip, 10^4 strings + curated snippets, < 5 s", [&]() -> Outcome {
        const auto t = Clock::now();
        std::mt19937 rng(1201);
        int bad = 0;
        for (int i = 0; i < 10000; ++i) {
            const auto s = random_text(rng);
            bad += codec::detokenize(codec::tokenize(s, dict), dict) != s;
        }
        for (const auto& s : curated().manifest.sections)
            bad += codec::detokenize(codec::tokenize(s.text, dict), dict) != s.text;
        const double s = seconds_since(t);
        return {bad == 0 && s < 5.0, std::to_string(bad) + " mismatches in " + fmt(s) + " s"};
    });

    criterion("binary codec round trip, 10^3 statement lists", [&]() -> Outcome {
        std::mt19937 rng(1202);
        int bad = 0;
        for (int i = 0; i < 1000; ++i) {
            const auto program = random_program(rng);
            const auto book = codec::Codebook::from_statements(program);
            const auto bits = codec::encode_binary(program, book);
            bad += bits.bit_length != codec::kWordBits * codec::unpack_words(bits).size();
            bad += codec::decode_binary(bits, book) != program;
        }
        return {bad == 0, std::to_string(bad) + " failures"};
    });

    criterion("deflate output inflates identically under zlib, 100 blobs", [&]() -> Outcome {
        std::mt19937 rng(1969);
        int bad = 0;
        std::size_t in_bytes = 0;
        for (int i = 0; i < 100; ++i) {
            std::vector<std::uint8_t> data;
            const std::size_t n = rng() % 20000;
            switch (i % 4) {
                case 0:
                    for (std::size_t k = 0; k < n; ++k) data.push_back(static_cast<std::uint8_t>(rng()));
                    break;
                case 1:
                    for (std::size_t k = 0; k < n; ++k) data.push_back(static_cast<std::uint8_t>('a' + rng() % 4));
                    break;
                default: {
                    std::string s;
                    while (s.size() < n) s += random_text(rng) + "\n";
                    data.assign(s.begin(), s.end());
                }
            }
            in_bytes += data.size();
            const auto blob = codec::compress(std::span<const std::uint8_t>(data));
            bad += zlib_inflate_raw(blob.data, data.size()) != data;
        }
        return {bad == 0, std::to_string(bad) + " mismatches over " + std::to_string(in_bytes) + " bytes"};
    });

    criterion("QR round trip, 1000 payloads over v{1,7,10,25,40} x LMQH, < 60 s", [&]() -> Outcome {
        const auto t = Clock::now();
        std::mt19937 rng(1);
        int bad = 0;
        int cases = 0;
        const int versions[] = {1, 7, 10, 25, 40};
        while (cases < 1000)
            for (int v : versions)
                for (auto e : {qr::Ecc::L, qr::Ecc::M, qr::Ecc::Q, qr::Ecc::H}) {
                    const auto cap = qr::capacity(v, e);
                    std::vector<std::uint8_t> p(cases % 9 == 0 ? cap : rng() % (cap + 1));
                    for (auto& b : p) b = static_cast<std::uint8_t>(rng());
                    const auto m = qr::encode_symbol(p, {v, e});
                    bad += m.size() != 17 + 4 * v;
                    bad += qr::decode_symbol(m) != p;
                    ++cases;
                }
        const auto v25 = qr::encode_symbol(std::vector<std::uint8_t>(100, 'A'), {25, qr::Ecc::L});
        const double s = seconds_since(t);
        return {bad == 0 && v25.size() == 117 && s < 60.0,
                std::to_string(cases) + " cases, " + std::to_string(bad) + " failures, v25 is " +
                    std::to_string(v25.size()) + "x" + std::to_string(v25.size()) + ", " + fmt(s) + " s"};
    });

    criterion("capacity table monotone; 2953 -> 40-L, 2954 rejected", [&]() -> Outcome {
        bool ok = true;
        const qr::Ecc levels[] = {qr::Ecc::L, qr::Ecc::M, qr::Ecc::Q, qr::Ecc::H};
        for (int v = 1; v <= 40; ++v)
            for (int i = 0; i < 4; ++i) {
                if (v > 1) ok = ok && qr::capacity(v, levels[i]) > qr::capacity(v - 1, levels[i]);
                if (i > 0) ok = ok && qr::capacity(v, levels[i]) < qr::capacity(v, levels[i - 1]);
            }
        const int v = qr::select_version(2953, qr::Ecc::L);
        bool rejected = false;
        try {
            qr::select_version(2954, qr::Ecc::L);
        } catch (const Error& e) {
            rejected = e.kind() == ErrorKind::CapacityExceeded;
        }
        return {ok && v == 40 && rejected,
                "160 cells monotone=" + std::string(ok ? "yes" : "no") + ", 2953 -> " + std::to_string(v) +
                    ", 2954 rejected=" + (rejected ? "yes" : "no")};
    });

    criterion("build then verify exits 0; any single byte flip exits 1", [&]() -> Outcome {
        const auto dir = fs::temp_directory_path() / "relicpress_acceptance";
        fs::remove_all(dir);
        std::string log;
        const int b = run_cli({"build", "--manifest", kManifest, "--out", dir.string()}, &log);
        if (b != 0) return {false, "build exit " + std::to_string(b) + ": " + log};
        const int v = run_cli({"verify", dir.string()}, &log);
        if (v != 0) return {false, "verify exit " + std::to_string(v) + ": " + log};
        const auto path = dir / "payload.html";
        std::string html;
        {
            std::ifstream in(path, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            html = ss.str();
        }
        std::size_t missed = 0;
        for (std::size_t i = 0; i < html.size(); ++i) {
            auto flipped = html;
            flipped[i] = static_cast<char>(flipped[i] ^ 0x20);
            std::ofstream(path, std::ios::binary | std::ios::trunc) << flipped;
            missed += run_cli({"verify", dir.string()}) != cli::kVerifyFailed;
        }
        std::ofstream(path, std::ios::binary | std::ios::trunc) << html;
        const int again = run_cli({"verify", dir.string()});
        fs::remove_all(dir);
        return {missed == 0 && again == 0,
                "flipped each of " + std::to_string(html.size()) + " bytes, " + std::to_string(missed) + " undetected"};
    });

    criterion("hybrid extraction reproduces the P63/IGNALG/ALARM/P70 blocks", [&]() -> Outcome {
        const auto out = codec::run_strategy(codec::Strategy::Hybrid, curated(), dict);
        const auto doc = payload::extract_payload(out.artifact.html);
        int found = 0;
        std::string missing;
        for (const auto& s : curated().manifest.sections) {
            if (doc.rendered.find("\n# --- " + s.id + " ---\n" + s.text + "\n") != std::string::npos)
                ++found;
            else
                missing += " " + s.id;
        }
        const bool p63 = doc.rendered.find("P63LM TC PHASCHNG OCT 04024\nTC BANKCALL CADR R02BOTH\n"
                                           "CAF P63ADRES TS WHICH\nCAF DPSTHRSH TS DVTHRUSH\n") != std::string::npos;
        const auto n = curated().manifest.sections.size();
        return {found == static_cast<int>(n) && n == 4 && p63,
                std::to_string(found) + "/" + std::to_string(n) + " blocks" + (missing.empty() ? "" : ", missing" + missing)};
    });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << "\n";
    return failures;
}
