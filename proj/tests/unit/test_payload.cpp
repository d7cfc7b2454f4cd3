#include <numeric>
#include <random>

#include "doctest.h"
#include "relicpress/error.hpp"
#include "relicpress/payload.hpp"

using namespace relicpress;
using namespace relicpress::payload;

namespace {

std::vector<corpus::SectionSpec> sample_sections() {
    corpus::SectionSpec a;
    a.id = "P63";
    a.text = "P63LM TC PHASCHNG OCT 04024\nTC BANKCALL CADR R02BOTH";
    a.curated = true;
    corpus::SectionSpec b;
    b.id = "ODD";
    b.text = "back`tick ${x} <tag> \\ \"q\"\r\nend";
    b.curated = true;
    return {a, b};
}

}  // namespace

TEST_CASE("base64 length and round trip") {
    std::mt19937 rng(7);
    for (std::size_t n = 0; n < 300; ++n) {
        std::vector<std::uint8_t> data(n);
        for (auto& byte : data) byte = static_cast<std::uint8_t>(rng());
        const auto text = base64_encode(data);
        CHECK(text.size() == 4 * ((n + 2) / 3));
        CHECK(base64_decode(text) == data);
    }
    CHECK(base64_encode(codec::as_bytes("Man")) == "TWFu");
    CHECK(base64_encode(codec::as_bytes("Ma")) == "TWE=");
    CHECK(base64_encode(codec::as_bytes("M")) == "TQ==");
    CHECK_THROWS_AS(base64_decode("TWF"), Error);
    CHECK_THROWS_AS(base64_decode("TW*u"), Error);
}

TEST_CASE("data URI round trip") {
    const std::string html = "<p>100% \"ok\" #1 ?&</p>\n\xC3\xA9";
    const auto uri = data_uri_encode(html);
    CHECK(uri.starts_with(kDataUriPrefix));
    CHECK(uri.find_first_of("<>\"# \n%?", kDataUriPrefix.size()) == uri.find('%', kDataUriPrefix.size()));
    CHECK(data_uri_decode(uri) == html);
    CHECK_THROWS_AS(data_uri_decode("data:text/html,%4"), Error);
    CHECK_THROWS_AS(data_uri_decode("http://x"), Error);
}

TEST_CASE("assembled payload round trips through extraction") {
    const auto sections = sample_sections();
    const std::string core_plain = "TC BANKCALL\nCAF ZERO\n";
    const auto& dict = codec::TokenDictionary::standard();
    const auto blob = codec::compress(codec::tokenize(core_plain, dict));
    for (auto mode : {PayloadMode::RawHtml, PayloadMode::DataUri}) {
        const auto art = assemble_payload(blob, sections, dict, default_viewer_stub(), mode);
        CHECK(art.total_bytes == art.html.size());
        const auto doc = extract_payload(art.html);
        REQUIRE(doc.sections.size() == 2);
        CHECK(doc.sections[0].second == sections[0].text);
        CHECK(doc.sections[1].second == sections[1].text);
        CHECK(doc.core == core_plain);
        CHECK(doc.rendered.find("\n# --- P63 ---\n" + sections[0].text + "\n") != std::string::npos);
        CHECK(doc.rendered.ends_with(std::string(kCoreHeader) + core_plain));
        if (mode == PayloadMode::RawHtml) {
            CHECK(art.html.starts_with(kShellPrefix));
            CHECK(art.html.ends_with(kShellSuffix));
            // nothing inside the script may open a tag
            const auto body = std::string_view(art.html).substr(kShellPrefix.size());
            CHECK(body.find('<') == body.size() - kShellSuffix.size());
        }
    }
}

TEST_CASE("budget rows add up") {
    const auto sections = sample_sections();
    const auto& dict = codec::TokenDictionary::standard();
    const auto blob = codec::compress(std::string_view("a BANKCALL\n"));
    for (auto mode : {PayloadMode::RawHtml, PayloadMode::DataUri}) {
        const auto art = assemble_payload(blob, sections, dict, default_viewer_stub(), mode);
        const auto rows = budget_report(art);
        const auto bytes = std::accumulate(rows.begin(), rows.end(), std::size_t{0},
                                           [](std::size_t s, const BudgetRow& r) { return s + r.bytes; });
        const auto pct = std::accumulate(rows.begin(), rows.end(), 0.0,
                                         [](double s, const BudgetRow& r) { return s + r.percent; });
        CHECK(bytes == art.total_bytes);
        CHECK(pct == doctest::Approx(100.0).epsilon(0.001));
        CHECK(budget_report_tsv(art).find("total\t" + std::to_string(art.total_bytes)) != std::string::npos);
    }
}

TEST_CASE("budget overflow reports the breakdown") {
    const auto sections = sample_sections();
    const auto blob = codec::compress(std::string_view("x"));
    try {
        assemble_payload(blob, sections, codec::TokenDictionary::standard(), default_viewer_stub(),
                         PayloadMode::RawHtml, 200);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BudgetExceeded);
        CHECK(std::string(e.what()).find("stub") != std::string::npos);
    }
}

TEST_CASE("malformed payloads are rejected") {
    CHECK_THROWS_AS(parse_payload("<html></html>"), Error);
    const auto art = assemble_payload(codec::compress(std::string_view("x")), {}, codec::TokenDictionary::standard(),
                                      default_viewer_stub(), PayloadMode::RawHtml);
    CHECK_NOTHROW(parse_payload(art.html));
    CHECK_THROWS_AS(parse_payload(art.html + " "), Error);
    CHECK_THROWS_AS(parse_payload(art.html.substr(0, art.html.size() - 3)), Error);
}

TEST_CASE("viewer stub is shell safe") {
    const auto stub = default_viewer_stub();
    CHECK(stub.find('<') == std::string_view::npos);
    CHECK(stub.find("deflate-raw") != std::string_view::npos);
    CHECK(stub.find("textContent") != std::string_view::npos);
}
