#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "relicpress/error.hpp"
#include "relicpress/token_dictionary.hpp"

using namespace relicpress;
using namespace relicpress::codec;

namespace {

const TokenDictionary& first_five() {
    static const TokenDictionary d = TokenDictionary::standard().subset([](const TokenDictionary::Entry& e) {
        return e.first >= 'a' && e.first <= 'e';
    });
    return d;
}

std::string random_text(std::mt19937& rng) {
    static const char* pieces[] = {"TC", "TS", "CAF", "CS", "CA", "BANKCALL", "a", "b", "~", "~~", "a~", "~a",
                                   "P63LM", "TCF", "Z", "N", "O", "-1", "#", "é", "TC~", "CAFX", "xTC"};
    static const char* spaces[] = {" ", "  ", "\t", "\n", "\r\n", " \t ", "\v", "\f"};
    std::string out;
    const int n = static_cast<int>(rng() % 20);
    if (rng() % 3 == 0) out += spaces[rng() % std::size(spaces)];
    for (int i = 0; i < n; ++i) {
        out += pieces[rng() % std::size(pieces)];
        if (rng() % 5 == 0) out += pieces[rng() % std::size(pieces)];
        out += spaces[rng() % std::size(spaces)];
    }
    if (rng() % 2 == 0 && !out.empty()) out.pop_back();
    return out;
}

}  // namespace

TEST_CASE("standard dictionary has forty entries and the documented head") {
    const auto& d = TokenDictionary::standard();
    CHECK(d.entries().size() == 40);
    CHECK(d.escape() == '~');
    CHECK(d.token_for("TC") == 'a');
    CHECK(d.token_for("TS") == 'b');
    CHECK(d.token_for("CAF") == 'c');
    CHECK(d.token_for("CS") == 'd');
    CHECK(d.token_for("CA") == 'e');
    CHECK(d.mnemonic_for('a') == "TC");
    std::set<char> tokens;
    for (const auto& [t, m] : d.entries()) tokens.insert(t);
    CHECK(tokens.size() == 40);
}

TEST_CASE("whole-word substitution with escaping") {
    const auto& d = first_five();
    CHECK(tokenize("TC BANKCALL", d) == "a BANKCALL");
    CHECK(tokenize("CAF  ZERO\n\tTS L", d) == "c  ZERO\n\tb L");
    CHECK(tokenize("TCF CAFX", d) == "TCF CAFX");
    CHECK(tokenize("a", d) == "~a");
    CHECK(tokenize("f", d) == "f");
    CHECK(tokenize("~", d) == "~~");
    CHECK(tokenize("x~y", d) == "x~~y");
    CHECK(detokenize("a BANKCALL", d) == "TC BANKCALL");
    CHECK(detokenize("~a", d) == "a");
    CHECK(detokenize("x~~y", d) == "x~y");
}

TEST_CASE("dangling escape is rejected") {
    CHECK_THROWS_AS(detokenize("TC ab~", first_five()), Error);
    try {
        detokenize("xy~", first_five());
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MalformedTokenStream);
    }
}

TEST_CASE("randomized round trip") {
    std::mt19937 rng(42);
    for (int i = 0; i < 10000; ++i) {
        const auto text = random_text(rng);
        const auto& d = (i % 2) ? first_five() : TokenDictionary::standard();
        const auto tok = tokenize(text, d);
        REQUIRE_MESSAGE(detokenize(tok, d) == text, text);
    }
}

TEST_CASE("tokenizing never grows mnemonic-heavy text") {
    const std::string text = "TC BANKCALL\nCAF ZERO\nTS L\nCA Q\nCS A\n";
    CHECK(tokenize(text, TokenDictionary::standard()).size() < text.size());
}

TEST_CASE("json round trip and validation") {
    const auto& d = TokenDictionary::standard();
    CHECK(TokenDictionary::from_json(d.to_json()) == d);
    CHECK_THROWS_AS(TokenDictionary({{'a', "TC"}, {'a', "TS"}}, '~'), Error);
    CHECK_THROWS_AS(TokenDictionary({{'a', "TC"}, {'b', "TC"}}, '~'), Error);
    CHECK_THROWS_AS(TokenDictionary({{'~', "TC"}}, '~'), Error);
    CHECK_THROWS_AS(TokenDictionary({{'a', "T C"}}, '~'), Error);
}
