#include "tablesearch/index/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace tablesearch {

namespace {

bool is_delimiter(char c)
{
    switch (c) {
    case ',': case ';': case '(': case ')': case '[': case ']': case '{': case '}':
    case '"': case '<': case '>': case '|': case '=': case '$': case '\\': case '&':
        return true;
    default:
        return std::isspace(static_cast<unsigned char>(c)) != 0;
    }
}

bool is_edge_punct(char c)
{
    switch (c) {
    case '.': case ':': case '!': case '?': case '\'': case '*': case '-': case '`': case '#':
        return true;
    default:
        return false;
    }
}

bool has_content(std::string_view word)
{
    static constexpr std::array<std::string_view, 7> kSymbolsOnly = {"±", "–", "—", "×", "−", "·", "°"};
    bool ascii_alnum = std::any_of(word.begin(), word.end(),
                                   [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; });
    if (ascii_alnum) {
        return true;
    }
    bool non_ascii = std::any_of(word.begin(), word.end(), [](char c) { return static_cast<unsigned char>(c) >= 0x80U; });
    if (!non_ascii) {
        return false;
    }
    return std::find(kSymbolsOnly.begin(), kSymbolsOnly.end(), word) == kSymbolsOnly.end();
}

bool bypasses_stemmer(std::string_view surface)
{
    for (std::size_t i = 0; i < surface.size(); ++i) {
        auto c = static_cast<unsigned char>(surface[i]);
        if (std::isdigit(c) != 0 || c == '/' || c == '^' || c == '_') {
            return true;
        }
        if (i > 0 && std::isupper(c) != 0) {
            return true;
        }
    }
    return false;
}

std::string lowercase(std::string_view s)
{
    std::string out(s);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

bool ends_with(std::string_view s, std::string_view suffix)
{
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string light_stem(std::string_view word)
{
    static const std::unordered_set<std::string_view> kKeep = {
        "series", "species", "lens", "bias", "gas", "news", "physics", "mathematics", "dynamics",
        "kinematics", "optics", "mechanics", "statistics", "electronics", "thermodynamics",
        "hydrodynamics", "magnetohydrodynamics", "always", "perhaps", "whereas", "towards", "across",
        "plus", "thus", "versus", "alias", "atlas", "chaos", "cosmos", "axis", "basis", "analysis",
        "radius", "status", "genus", "nucleus", "focus", "modulus", "torus", "virus", "bonus",
        "chassis", "means", "bus", "yes", "this", "has", "was", "does", "is", "as", "us",
    };
    std::string w(word);
    if (w.size() < 4 || kKeep.contains(word)) {
        return w;
    }
    if (ends_with(w, "'s")) {
        w.resize(w.size() - 2);
        return w;
    }
    if (ends_with(w, "ies") && !ends_with(w, "eies") && !ends_with(w, "aies")) {
        w.replace(w.size() - 3, 3, "y");
        return w;
    }
    if (ends_with(w, "es") && !ends_with(w, "aes") && !ends_with(w, "ees") && !ends_with(w, "oes")) {
        w.pop_back();
        return w;
    }
    if (ends_with(w, "s") && !ends_with(w, "us") && !ends_with(w, "ss") && !ends_with(w, "is")) {
        w.pop_back();
    }
    return w;
}

const std::unordered_set<std::string>& default_stopwords()
{
    // General-purpose English function words. Single letters other than
    // "a" and "i" are kept out on purpose: many are unit symbols (m, s, g, K).
    static const std::unordered_set<std::string> kStopwords = {
        "a", "about", "above", "after", "again", "against", "all", "also", "am", "an", "and", "any",
        "are", "as", "at", "be", "because", "been", "before", "being", "below", "between", "both",
        "but", "by", "can", "could", "did", "do", "does", "doing", "down", "during", "each", "either",
        "etc", "for", "from", "further", "had", "has", "have", "having", "he", "her", "here", "hers",
        "herself", "him", "himself", "his", "how", "however", "i", "if", "in", "into", "is", "it",
        "its", "itself", "just", "may", "me", "might", "more", "most", "must", "my", "myself", "neither",
        "no", "nor", "not", "now", "of", "off", "on", "once", "only", "or", "other", "our", "ours",
        "ourselves", "out", "over", "own", "same", "shall", "she", "should", "so", "some", "such",
        "than", "that", "the", "their", "theirs", "them", "themselves", "then", "there", "these",
        "they", "this", "those", "through", "to", "too", "under", "until", "up", "upon", "us", "very",
        "via", "was", "we", "were", "what", "when", "where", "whether", "which", "while", "who", "whom",
        "whose", "why", "will", "with", "within", "without", "would", "you", "your", "yours",
        "yourself", "yourselves",
    };
    return kStopwords;
}

std::vector<std::string> split_words(std::string_view text)
{
    std::vector<std::string> words;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_delimiter(text[i])) {
            ++i;
        }
        std::size_t start = i;
        while (i < text.size() && !is_delimiter(text[i])) {
            ++i;
        }
        std::string_view word = text.substr(start, i - start);
        while (!word.empty() && is_edge_punct(word.front())) {
            word.remove_prefix(1);
        }
        while (!word.empty() && is_edge_punct(word.back())) {
            word.remove_suffix(1);
        }
        if (!word.empty() && has_content(word)) {
            words.emplace_back(word);
        }
    }
    return words;
}

Tokenizer::Tokenizer() : stopwords_(default_stopwords()) {}

Tokenizer::Tokenizer(std::unordered_set<std::string> stopwords) : stopwords_(std::move(stopwords)) {}

bool Tokenizer::is_stopword(std::string_view lowered) const { return stopwords_.contains(std::string(lowered)); }

std::vector<Token> Tokenizer::tokenize(std::string_view text) const
{
    std::vector<Token> tokens;
    std::uint32_t position = 0;
    for (auto& surface : split_words(text)) {
        std::string lowered = lowercase(surface);
        if (is_stopword(lowered)) {
            continue;
        }
        std::string stem = bypasses_stemmer(surface) ? lowered : light_stem(lowered);
        tokens.push_back({std::move(surface), std::move(stem), position++});
    }
    return tokens;
}

std::vector<std::string> Tokenizer::terms(std::string_view text) const
{
    std::vector<std::string> out;
    for (auto& token : tokenize(text)) {
        out.push_back(std::move(token.stem));
    }
    return out;
}

}  // namespace tablesearch
