#include "tablesearch/queryintel/pos_tagger.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include "tablesearch/error.hpp"
#include "tablesearch/index/tokenizer.hpp"
#include "tablesearch/queryintel/text_util.hpp"

namespace tablesearch {

namespace {

constexpr std::array<std::pair<std::string_view, PosTag>, 10> kTagNames = {{
    {"N", PosTag::noun},
    {"A", PosTag::adjective},
    {"V", PosTag::verb},
    {"ADV", PosTag::adverb},
    {"P", PosTag::preposition},
    {"D", PosTag::determiner},
    {"C", PosTag::conjunction},
    {"PRON", PosTag::pronoun},
    {"Q", PosTag::quantifier},
    {"NUM", PosTag::number},
}};

bool ends_with(std::string_view s, std::string_view suffix)
{
    return s.size() > suffix.size() + 1 && s.substr(s.size() - suffix.size()) == suffix;
}

PosTag tag_by_shape(std::string_view word)
{
    if (std::any_of(word.begin(), word.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; })) {
        return PosTag::number;
    }
    if (ends_with(word, "ly")) {
        return PosTag::adverb;
    }
    static constexpr std::array<std::string_view, 14> kAdjectiveSuffixes = {
        "al", "ic", "ous", "ive", "ful", "less", "able", "ible", "ian", "like", "ary", "ed", "ent", "ant",
    };
    for (auto suffix : kAdjectiveSuffixes) {
        if (ends_with(word, suffix)) {
            return PosTag::adjective;
        }
    }
    return PosTag::noun;
}

// Function words and the scientific vocabulary the suffix rules get wrong.
const std::pair<std::string_view, PosTag> kBundled[] = {
    {"a", PosTag::determiner}, {"an", PosTag::determiner}, {"the", PosTag::determiner},
    {"this", PosTag::determiner}, {"that", PosTag::determiner}, {"these", PosTag::determiner},
    {"those", PosTag::determiner}, {"each", PosTag::determiner}, {"every", PosTag::determiner},
    {"its", PosTag::determiner}, {"their", PosTag::determiner}, {"our", PosTag::determiner},
    {"his", PosTag::determiner}, {"her", PosTag::determiner}, {"which", PosTag::determiner},
    {"what", PosTag::pronoun}, {"it", PosTag::pronoun}, {"they", PosTag::pronoun}, {"we", PosTag::pronoun},
    {"i", PosTag::pronoun}, {"you", PosTag::pronoun}, {"he", PosTag::pronoun}, {"she", PosTag::pronoun},
    {"in", PosTag::preposition}, {"of", PosTag::preposition}, {"at", PosTag::preposition},
    {"on", PosTag::preposition}, {"for", PosTag::preposition}, {"from", PosTag::preposition},
    {"with", PosTag::preposition}, {"without", PosTag::preposition}, {"by", PosTag::preposition},
    {"to", PosTag::preposition}, {"into", PosTag::preposition}, {"over", PosTag::preposition},
    {"under", PosTag::preposition}, {"between", PosTag::preposition}, {"among", PosTag::preposition},
    {"versus", PosTag::preposition}, {"vs", PosTag::preposition}, {"via", PosTag::preposition},
    {"per", PosTag::preposition}, {"across", PosTag::preposition}, {"within", PosTag::preposition},
    {"near", PosTag::preposition}, {"during", PosTag::preposition}, {"as", PosTag::preposition},
    {"than", PosTag::preposition}, {"about", PosTag::preposition}, {"through", PosTag::preposition},
    {"and", PosTag::conjunction}, {"or", PosTag::conjunction}, {"but", PosTag::conjunction},
    {"nor", PosTag::conjunction}, {"whether", PosTag::conjunction}, {"if", PosTag::conjunction},
    {"different", PosTag::quantifier}, {"various", PosTag::quantifier}, {"several", PosTag::quantifier},
    {"many", PosTag::quantifier}, {"some", PosTag::quantifier}, {"all", PosTag::quantifier},
    {"any", PosTag::quantifier}, {"few", PosTag::quantifier}, {"more", PosTag::quantifier},
    {"most", PosTag::quantifier}, {"other", PosTag::quantifier}, {"such", PosTag::quantifier},
    {"is", PosTag::verb}, {"are", PosTag::verb}, {"was", PosTag::verb}, {"were", PosTag::verb},
    {"be", PosTag::verb}, {"been", PosTag::verb}, {"has", PosTag::verb}, {"have", PosTag::verb},
    {"do", PosTag::verb}, {"does", PosTag::verb}, {"run", PosTag::verb}, {"find", PosTag::verb},
    {"compare", PosTag::verb}, {"show", PosTag::verb}, {"measure", PosTag::verb}, {"given", PosTag::verb},
    {"using", PosTag::verb}, {"used", PosTag::verb}, {"measured", PosTag::verb}, {"observed", PosTag::verb},
    {"quickly", PosTag::adverb}, {"not", PosTag::adverb}, {"very", PosTag::adverb}, {"also", PosTag::adverb},
    {"how", PosTag::adverb}, {"where", PosTag::adverb}, {"when", PosTag::adverb},
    {"material", PosTag::noun}, {"potential", PosTag::noun}, {"interval", PosTag::noun},
    {"signal", PosTag::noun}, {"metal", PosTag::noun}, {"crystal", PosTag::noun}, {"total", PosTag::noun},
    {"current", PosTag::noun}, {"gradient", PosTag::noun}, {"coefficient", PosTag::noun},
    {"component", PosTag::noun}, {"constant", PosTag::noun}, {"element", PosTag::noun},
    {"experiment", PosTag::noun}, {"moment", PosTag::noun}, {"speed", PosTag::noun},
    {"redshift", PosTag::noun}, {"planet", PosTag::noun}, {"bimetric", PosTag::adjective},
    {"newtonian", PosTag::adjective}, {"gravitational", PosTag::adjective}, {"electrical", PosTag::adjective},
    {"earth-like", PosTag::adjective}, {"x-ray", PosTag::adjective}, {"high", PosTag::adjective},
    {"low", PosTag::adjective},
};

}  // namespace

std::string_view pos_tag_name(PosTag tag)
{
    for (const auto& [name, value] : kTagNames) {
        if (value == tag) {
            return name;
        }
    }
    return "N";
}

std::optional<PosTag> pos_tag_from_name(std::string_view name)
{
    for (const auto& [n, value] : kTagNames) {
        if (n == name) {
            return value;
        }
    }
    return std::nullopt;
}

PosLexicon::PosLexicon()
{
    for (const auto& [word, tag] : kBundled) {
        lexicon_.emplace(std::string(word), tag);
    }
}

PosLexicon PosLexicon::read(std::istream& in)
{
    PosLexicon lexicon;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) {
            continue;
        }
        auto cols = split_tsv(line);
        auto tag = cols.size() == 2 ? pos_tag_from_name(trim(cols[1])) : std::nullopt;
        if (!tag || trim(cols[0]).empty()) {
            throw FormatError("lexicon line " + std::to_string(line_no) + ": expected 'word<TAB>tag'");
        }
        lexicon.add(trim(cols[0]), *tag);
    }
    return lexicon;
}

PosLexicon PosLexicon::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open lexicon " + path.string());
    }
    return read(in);
}

void PosLexicon::add(std::string_view word, PosTag tag) { lexicon_[to_lower(word)] = tag; }

PosTag PosLexicon::tag(std::string_view word) const
{
    auto lowered = to_lower(word);
    if (auto it = lexicon_.find(lowered); it != lexicon_.end()) {
        return it->second;
    }
    if (auto it = lexicon_.find(light_stem(lowered)); it != lexicon_.end()) {
        return it->second;
    }
    return tag_by_shape(light_stem(lowered));
}

std::vector<TaggedWord> PosLexicon::tag_text(std::string_view text) const
{
    std::vector<TaggedWord> out;
    for (const auto& word : split_words(text)) {
        auto lowered = to_lower(word);
        out.push_back({lowered, tag(lowered)});
    }
    return out;
}

std::vector<std::string> extract_noun_phrases(std::string_view text, const PosLexicon& lexicon)
{
    std::vector<std::string> phrases;
    std::vector<std::string> adjectives;
    std::vector<std::string> nouns;
    auto flush = [&] {
        if (!nouns.empty()) {
            std::string phrase;
            for (const auto* part : {&adjectives, &nouns}) {
                for (const auto& w : *part) {
                    if (!phrase.empty()) {
                        phrase += ' ';
                    }
                    phrase += w;
                }
            }
            phrases.push_back(std::move(phrase));
        }
        adjectives.clear();
        nouns.clear();
    };
    for (const auto& [word, tag] : lexicon.tag_text(text)) {
        if (tag == PosTag::noun) {
            nouns.push_back(word);
        } else if (tag == PosTag::adjective) {
            if (!nouns.empty()) {
                flush();
            }
            adjectives.push_back(word);
        } else {
            flush();
            adjectives.clear();
        }
    }
    flush();
    return phrases;
}

}  // namespace tablesearch
