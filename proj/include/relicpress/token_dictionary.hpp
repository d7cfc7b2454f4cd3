#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace relicpress::codec {

/// Bijective map between single-character tokens and AGC mnemonics.
///
/// Token characters are printable ASCII, distinct from the escape character.
/// Mnemonics are non-empty words without whitespace.
class TokenDictionary {
public:
    using Entry = std::pair<char, std::string>;

    TokenDictionary() = default;

    /// Throws Error(InvalidInput) if the entries are not a valid bijection.
    TokenDictionary(std::vector<Entry> entries, char escape);

    /// The shipped dictionary: 40 mnemonics on a-z then A-N, escape '~'.
    static const TokenDictionary& standard();

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    char escape() const noexcept { return escape_; }
    bool empty() const noexcept { return entries_.empty(); }

    std::optional<std::string_view> mnemonic_for(char token) const noexcept;
    std::optional<char> token_for(std::string_view mnemonic) const noexcept;
    bool is_token(char c) const noexcept { return token_index_[static_cast<unsigned char>(c)] >= 0; }

    /// Restriction to the entries whose mnemonic satisfies `keep`.
    template <typename Pred>
    TokenDictionary subset(Pred keep) const {
        std::vector<Entry> kept;
        for (const auto& e : entries_)
            if (keep(e)) kept.push_back(e);
        return TokenDictionary(std::move(kept), escape_);
    }

    std::string to_json() const;
    static TokenDictionary from_json(std::string_view json_text);

    bool operator==(const TokenDictionary& other) const noexcept {
        return escape_ == other.escape_ && entries_ == other.entries_;
    }

private:
    std::vector<Entry> entries_;
    char escape_ = '~';
    std::array<int, 256> token_index_ = filled();
    std::unordered_map<std::string, char> by_mnemonic_;

    static constexpr std::array<int, 256> filled() {
        std::array<int, 256> a{};
        a.fill(-1);
        return a;
    }
};

/// Whole-word substitution; see tokenize.cpp for the escaping rules.
std::string tokenize(std::string_view text, const TokenDictionary& dict);

/// Inverse of tokenize. Throws Error(MalformedTokenStream) on a dangling escape.
std::string detokenize(std::string_view text, const TokenDictionary& dict);

}  // namespace relicpress::codec
