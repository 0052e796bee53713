#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tablesearch {

enum class PosTag : std::uint8_t {
    noun,
    adjective,
    verb,
    adverb,
    preposition,
    determiner,
    conjunction,
    pronoun,
    quantifier,  ///< "different", "various", "several": never part of a noun phrase
    number,
};

std::string_view pos_tag_name(PosTag tag);
std::optional<PosTag> pos_tag_from_name(std::string_view name);

struct TaggedWord {
    std::string word;  ///< lowercased surface form
    PosTag tag = PosTag::noun;

    bool operator==(const TaggedWord&) const = default;
};

/// Lexicon-driven part-of-speech tagger. Words missing from the lexicon are
/// tagged from their suffix ("-ly" adverb, "-al"/"-ic"/"-ous"/... adjective),
/// falling back to noun.
class PosLexicon {
public:
    /// The bundled lexicon of function words and common scientific vocabulary.
    PosLexicon();

    /// TSV "word<TAB>tag" with tags N, A, V, ADV, P, D, C, PRON, Q, NUM.
    /// Entries extend the bundled lexicon. Throws FormatError.
    static PosLexicon read(std::istream& in);
    static PosLexicon load(const std::filesystem::path& path);

    void add(std::string_view word, PosTag tag);
    [[nodiscard]] PosTag tag(std::string_view word) const;
    [[nodiscard]] std::vector<TaggedWord> tag_text(std::string_view text) const;

private:
    std::unordered_map<std::string, PosTag> lexicon_;
};

/// Noun phrases (adjective* noun+) in text order, lowercased surface forms.
std::vector<std::string> extract_noun_phrases(std::string_view text, const PosLexicon& lexicon);

}  // namespace tablesearch
