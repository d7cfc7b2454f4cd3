#include "doctest.h"
#include "relicpress/error.hpp"
#include "relicpress/strategy.hpp"

using namespace relicpress;
using namespace relicpress::codec;

namespace {

const corpus::ResolvedSelection& curated() {
    static const auto sel = [] {
        const auto m = corpus::load_manifest(RELICPRESS_DATA_DIR "/curated_manifest.json");
        return corpus::resolve_sections(m, RELICPRESS_DATA_DIR);
    }();
    return sel;
}

std::string block(std::string_view id, std::string_view text) {
    return "\n# --- " + std::string(id) + " ---\n" + std::string(text) + "\n";
}

}  // namespace

TEST_CASE("ratio arithmetic") {
    CHECK(Ratio::of(83500, 3072).display() == "27:1");
    CHECK(Ratio::of(83500, 2867).display() == "29:1");
    CHECK(Ratio::of(83500, 1434).display() == "58:1");
    CHECK(Ratio::of(6, 4) == Ratio{3, 2});
    CHECK(Ratio::of(5, 2).rounded() == 2);
    CHECK(Ratio::of(7, 2).rounded() == 4);
    CHECK(Ratio::of(11, 4).rounded() == 3);
    CHECK_THROWS_AS(Ratio::of(1, 0), Error);
}

TEST_CASE("stated table consistency") {
    CHECK(stated_ratio_consistent(kStatedRows[0]));
    CHECK_FALSE(stated_ratio_consistent(kStatedRows[1]));
    CHECK_FALSE(stated_ratio_consistent(kStatedRows[2]));
}

TEST_CASE("strategy names") {
    for (auto s : kAllStrategies) CHECK(parse_strategy(cli_name(s)) == s);
    CHECK_FALSE(parse_strategy("zip"));
    CHECK(display_name(Strategy::TokenizedText) == "Tokenized Text");
}

TEST_CASE("every strategy fits one symbol") {
    const auto rows = compare_strategies(curated(), TokenDictionary::standard());
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CAPTURE(display_name(r.strategy));
        CHECK(r.compressed_size <= payload::kBudgetCap);
        CHECK(r.compressed_size > 0);
        CHECK(r.ratio == Ratio::of(r.source_bytes, r.compressed_size));
    }
    const auto hybrid = run_strategy(Strategy::Hybrid, curated(), TokenDictionary::standard());
    CHECK(hybrid.result.compressed_size <= 1600);
}

TEST_CASE("report is deterministic and carries the stated columns") {
    const auto a = report_tsv(compare_strategies(curated(), TokenDictionary::standard()));
    const auto b = report_tsv(compare_strategies(curated(), TokenDictionary::standard()));
    CHECK(a == b);
    CHECK(a.find("\t3072\t27:1\t27:1\tyes\n") != std::string::npos);
    CHECK(a.find("\t2867\t22:1\t29:1\tno\n") != std::string::npos);
    CHECK(a.find("\t1434\t15:1\t58:1\tno\n") != std::string::npos);
}

TEST_CASE("hybrid extraction reproduces the curated blocks") {
    const auto out = run_strategy(Strategy::Hybrid, curated(), TokenDictionary::standard());
    const auto doc = payload::extract_payload(out.artifact.html);
    for (const auto& s : curated().manifest.sections) CHECK(doc.rendered.find(block(s.id, s.text)) != std::string::npos);
    CHECK(doc.rendered.find("\n# --- P63 ---\nP63LM TC PHASCHNG OCT 04024\nTC BANKCALL CADR R02BOTH\n") !=
          std::string::npos);
    CHECK(doc.rendered.starts_with(payload::kDocumentTitle));
}

TEST_CASE("token strategy detokenizes to the covered sections") {
    const auto out = run_strategy(Strategy::TokenizedText, curated(), TokenDictionary::standard());
    const auto doc = payload::extract_payload(out.artifact.html);
    CHECK(doc.core == out.expanded_core);
    for (const auto& s : out.covered) CHECK(doc.core.find(s.text) != std::string::npos);
}

TEST_CASE("binary strategy image decodes to the canonical statements") {
    const auto out = run_strategy(Strategy::FullBinary, curated(), TokenDictionary::standard());
    const auto doc = payload::parse_payload(out.artifact.html);
    const auto image = to_string(inflate_raw(doc.blob));
    CHECK(image == out.core);
    const auto [book, bits] = unpack_binary_image(image);
    CHECK(corpus::serialize(decode_binary(bits, book)) == out.expanded_core);
}

TEST_CASE("data URI mode stays within budget") {
    BuildOptions opt;
    opt.mode = payload::PayloadMode::DataUri;
    for (auto s : kAllStrategies) {
        const auto out = run_strategy(s, curated(), TokenDictionary::standard(), nullptr, opt);
        CHECK(out.artifact.html.starts_with(payload::kDataUriPrefix));
        CHECK(out.result.compressed_size <= payload::kBudgetCap);
    }
}

TEST_CASE("single-file manifest still yields three rows") {
    auto m = curated().manifest;
    m.sections.erase(std::remove_if(m.sections.begin(), m.sections.end(),
                                    [](const corpus::SectionSpec& s) { return s.id != "P63"; }),
                     m.sections.end());
    const auto sel = corpus::resolve_sections(m, RELICPRESS_DATA_DIR);
    CHECK(compare_strategies(sel, TokenDictionary::standard()).size() == 3);
}

TEST_CASE("empty selection") {
    auto m = curated().manifest;
    m.sections.clear();
    const auto sel = corpus::resolve_sections(m, RELICPRESS_DATA_DIR);
    for (auto s : kAllStrategies) {
        try {
            run_strategy(s, sel, TokenDictionary::standard());
            FAIL("expected EmptySelection");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::EmptySelection);
        }
    }
}

TEST_CASE("dictionary pruning keeps only used tokens") {
    const auto& dict = TokenDictionary::standard();
    const auto pruned = prune_dictionary(dict, tokenize("TC BANKCALL\nCAF P63", dict));
    CHECK(detokenize(tokenize("TC BANKCALL\nCAF P63", dict), pruned) == "TC BANKCALL\nCAF P63");
    CHECK(pruned.entries().size() == 3);  // TC, BANKCALL, CAF
}
