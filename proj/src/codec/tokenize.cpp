// Tokenization works on whole whitespace-delimited words:
//
//  * a word equal to a mnemonic becomes its single token character;
//  * every escape character inside any other word is doubled;
//  * any other word that is exactly one token character gets an escape prefix.
//
// Detokenization reverses this word by word, so a token character embedded in
// a longer word ("A" inside "BANKCALL") never needs escaping.

#include <json.hpp>

#include "relicpress/error.hpp"
#include "relicpress/token_dictionary.hpp"

namespace relicpress::codec {

namespace {

bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

template <typename WordFn>
std::string map_words(std::string_view text, WordFn&& on_word) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_space(text[i])) {
            out += text[i++];
            continue;
        }
        const std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        on_word(text.substr(start, i - start), start, out);
    }
    return out;
}

}  // namespace

TokenDictionary::TokenDictionary(std::vector<Entry> entries, char escape)
    : entries_(std::move(entries)), escape_(escape) {
    auto printable = [](char c) { return c >= 0x21 && c <= 0x7E; };
    if (!printable(escape_))
        throw Error(ErrorKind::InvalidInput, "escape character must be printable ASCII");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& [token, mnemonic] = entries_[i];
        if (!printable(token))
            throw Error(ErrorKind::InvalidInput, "token for '" + mnemonic + "' is not printable ASCII");
        if (token == escape_) throw Error(ErrorKind::InvalidInput, "token equals the escape character");
        if (mnemonic.empty()) throw Error(ErrorKind::InvalidInput, "empty mnemonic");
        for (char c : mnemonic)
            if (is_space(c)) throw Error(ErrorKind::InvalidInput, "mnemonic '" + mnemonic + "' contains whitespace");
        auto& slot = token_index_[static_cast<unsigned char>(token)];
        if (slot >= 0) throw Error(ErrorKind::InvalidInput, std::string("token '") + token + "' used twice");
        slot = static_cast<int>(i);
        if (!by_mnemonic_.emplace(mnemonic, token).second)
            throw Error(ErrorKind::InvalidInput, "mnemonic '" + mnemonic + "' mapped twice");
    }
}

const TokenDictionary& TokenDictionary::standard() {
    static const TokenDictionary dict = [] {
        // TC, TS, CAF, CS, CA take a-e; the rest are frequent Luminary mnemonics.
        static constexpr std::string_view kMnemonics[] = {
            "TC",     "TS",    "CAF",  "CS",    "CA",     "TCF",   "AD",     "MASK",
            "INDEX",  "EXTEND", "INHINT", "RELINT", "DCA", "DXCH",  "CADR",   "OCT",
            "BANKCALL", "CCS", "XCH",  "LXCH",  "DCS",    "ADS",   "BZF",    "BZMF",
            "QXCH",   "DEC",   "2CADR", "VLOAD", "DLOAD", "STCALL", "STORE", "GOTO",
            "EXIT",   "INCR",  "AUG",  "DIM",   "ROR",    "WOR",   "WAND",   "MP",
        };
        static constexpr std::string_view kTokens = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMN";
        static_assert(std::size(kMnemonics) == kTokens.size());
        std::vector<Entry> entries;
        for (std::size_t i = 0; i < kTokens.size(); ++i) entries.emplace_back(kTokens[i], std::string(kMnemonics[i]));
        return TokenDictionary(std::move(entries), '~');
    }();
    return dict;
}

std::optional<std::string_view> TokenDictionary::mnemonic_for(char token) const noexcept {
    const int idx = token_index_[static_cast<unsigned char>(token)];
    if (idx < 0) return std::nullopt;
    return std::string_view(entries_[static_cast<std::size_t>(idx)].second);
}

std::optional<char> TokenDictionary::token_for(std::string_view mnemonic) const noexcept {
    auto it = by_mnemonic_.find(std::string(mnemonic));
    if (it == by_mnemonic_.end()) return std::nullopt;
    return it->second;
}

std::string TokenDictionary::to_json() const {
    nlohmann::ordered_json j;
    j["tokens"] = nlohmann::ordered_json::object();
    for (const auto& [token, mnemonic] : entries_) j["tokens"][std::string(1, token)] = mnemonic;
    j["escape"] = std::string(1, escape_);
    return j.dump();
}

TokenDictionary TokenDictionary::from_json(std::string_view json_text) {
    try {
        const auto j = nlohmann::ordered_json::parse(json_text);
        std::vector<Entry> entries;
        for (const auto& [key, value] : j.at("tokens").items()) {
            if (key.size() != 1) throw Error(ErrorKind::InvalidInput, "token '" + key + "' is not a single character");
            entries.emplace_back(key[0], value.get<std::string>());
        }
        const auto escape = j.at("escape").get<std::string>();
        if (escape.size() != 1) throw Error(ErrorKind::InvalidInput, "escape must be a single character");
        return TokenDictionary(std::move(entries), escape[0]);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("dictionary: ") + e.what());
    }
}

std::string tokenize(std::string_view text, const TokenDictionary& dict) {
    const char esc = dict.escape();
    return map_words(text, [&](std::string_view word, std::size_t, std::string& out) {
        if (auto token = dict.token_for(word)) {
            out += *token;
            return;
        }
        if (word.size() == 1 && dict.is_token(word[0])) {
            out += esc;
            out += word[0];
            return;
        }
        for (char c : word) {
            if (c == esc) out += esc;
            out += c;
        }
    });
}

std::string detokenize(std::string_view text, const TokenDictionary& dict) {
    const char esc = dict.escape();
    return map_words(text, [&](std::string_view word, std::size_t offset, std::string& out) {
        if (word.size() == 1) {
            if (auto mnemonic = dict.mnemonic_for(word[0])) {
                out += *mnemonic;
                return;
            }
        }
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (word[i] != esc) {
                out += word[i];
                continue;
            }
            if (i + 1 == word.size())
                throw Error(ErrorKind::MalformedTokenStream,
                            "dangling escape at offset " + std::to_string(offset + i));
            out += word[++i];
        }
    });
}

}  // namespace relicpress::codec
