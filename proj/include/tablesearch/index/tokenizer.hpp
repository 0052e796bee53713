#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tablesearch {

struct Token {
    std::string surface;
    std::string stem;
    /// Position among the kept (non-stopword) tokens of the text unit.
    std::uint32_t position = 0;

    bool operator==(const Token&) const = default;
};

/// Lowercases, drops stopwords and applies a light plural stemmer. Unit-like
/// symbols ("keV", "m/s^2", "H_2O") are only lowercased: any token holding a
/// digit, '/', '^' or an uppercase letter after its first character bypasses
/// the stemmer.
///
/// The same tokenizer is used for table text, queries, concepts, unit
/// symbols and gazetteer entries.
class Tokenizer {
public:
    Tokenizer();
    explicit Tokenizer(std::unordered_set<std::string> stopwords);

    [[nodiscard]] std::vector<Token> tokenize(std::string_view text) const;
    /// Stems of tokenize(text), in order.
    [[nodiscard]] std::vector<std::string> terms(std::string_view text) const;

    [[nodiscard]] bool is_stopword(std::string_view lowered) const;

    /// Identifies the tokenizer in persisted indexes.
    static constexpr std::string_view kVersion = "light-s-stemmer-1";

private:
    std::unordered_set<std::string> stopwords_;
};

/// Plural-only stemmer (S-stemmer with exceptions for -us, -ss, -is and a
/// short list of singular -s words). Input must already be lowercase.
std::string light_stem(std::string_view word);

/// The bundled English stopword list.
const std::unordered_set<std::string>& default_stopwords();

/// Surface chunks of a text unit before stopping: split on whitespace and
/// bracket-like punctuation, edge punctuation stripped.
std::vector<std::string> split_words(std::string_view text);

}  // namespace tablesearch
