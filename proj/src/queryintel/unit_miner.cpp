#include "tablesearch/queryintel/unit_miner.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>

#include "tablesearch/error.hpp"
#include "tablesearch/queryintel/text_util.hpp"

namespace tablesearch {

namespace {

struct Item {
    std::string text;
    bool group = false;
    bool boundary_after = false;
};

std::size_t utf8_length(std::string_view s)
{
    std::size_t n = 0;
    for (char c : s) {
        if ((static_cast<unsigned char>(c) & 0xC0U) != 0x80U) {
            ++n;
        }
    }
    return n;
}

std::string strip_quotes(std::string_view word)
{
    auto edge = [](char c) { return c == '"' || c == '\'' || c == '*' || c == '`'; };
    while (!word.empty() && edge(word.front())) {
        word.remove_prefix(1);
    }
    while (!word.empty() && edge(word.back())) {
        word.remove_suffix(1);
    }
    return std::string(word);
}

std::vector<Item> lex(std::string_view text)
{
    std::vector<Item> items;
    std::string word;
    auto end_word = [&] {
        auto w = strip_quotes(word);
        if (!w.empty()) {
            items.push_back({std::move(w), false, false});
        }
        word.clear();
    };
    auto mark_boundary = [&] {
        if (!items.empty()) {
            items.back().boundary_after = true;
        }
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(' || c == '[') {
            end_word();
            char close = c == '(' ? ')' : ']';
            auto end = text.find(close, i + 1);
            if (end == std::string_view::npos) {
                mark_boundary();
                continue;
            }
            items.push_back({std::string(trim(text.substr(i + 1, end - i - 1))), true, true});
            i = end;
            continue;
        }
        bool sentence_end = (c == '.' || c == '?' || c == '!') &&
                            (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])) != 0);
        if (c == ',' || c == ';' || c == ':' || c == ')' || c == ']' || sentence_end) {
            end_word();
            mark_boundary();
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c)) != 0) {
            end_word();
            continue;
        }
        word += c;
    }
    end_word();
    return items;
}

/// Noun phrase (adjective* noun+) ending exactly at item `last`.
std::optional<std::string> phrase_ending_at(const std::vector<Item>& items, std::ptrdiff_t last,
                                            const PosLexicon& lexicon)
{
    if (last < 0) {
        return std::nullopt;
    }
    auto usable = [&](std::ptrdiff_t k) {
        const auto& item = items[static_cast<std::size_t>(k)];
        return !item.group && (k == last || !item.boundary_after);
    };
    if (!usable(last) || lexicon.tag(items[static_cast<std::size_t>(last)].text) != PosTag::noun) {
        return std::nullopt;
    }
    std::ptrdiff_t first = last;
    while (first > 0 && usable(first - 1) && lexicon.tag(items[static_cast<std::size_t>(first - 1)].text) == PosTag::noun) {
        --first;
    }
    while (first > 0 && usable(first - 1) &&
           lexicon.tag(items[static_cast<std::size_t>(first - 1)].text) == PosTag::adjective) {
        --first;
    }
    std::string phrase;
    for (auto k = first; k <= last; ++k) {
        if (!phrase.empty()) {
            phrase += ' ';
        }
        phrase += to_lower(items[static_cast<std::size_t>(k)].text);
    }
    return phrase;
}

}  // namespace

std::vector<UnitPair> mine_units_in_text(std::string_view text, const QuantityOntology& ontology,
                                         const PosLexicon& lexicon)
{
    std::vector<UnitPair> out;
    auto items = lex(text);
    auto emit = [&](std::optional<std::string> phrase, const QuantityType& type) {
        if (phrase) {
            UnitPair pair{std::move(*phrase), type.name};
            if (std::find(out.begin(), out.end(), pair) == out.end()) {
                out.push_back(std::move(pair));
            }
        }
    };
    for (std::size_t j = 0; j < items.size(); ++j) {
        const auto& item = items[j];
        auto at = static_cast<std::ptrdiff_t>(j);
        if (item.group) {
            std::string_view inner = item.text;
            if (inner.starts_with("in ")) {
                inner = trim(inner.substr(3));
            }
            if (const auto* type = ontology.type_of_symbol(inner)) {
                emit(phrase_ending_at(items, at - 1, lexicon), *type);
            }
            continue;
        }
        const auto* type = ontology.type_of_symbol(item.text);
        if (type == nullptr) {
            continue;
        }
        bool at_end = j + 1 == items.size() || item.boundary_after;
        if (!at_end) {
            continue;
        }
        bool one_letter = utf8_length(item.text) == 1;
        if (j >= 1 && !items[j - 1].group && !items[j - 1].boundary_after) {
            auto connector = to_lower(items[j - 1].text);
            if (connector == "in" || connector == "of") {
                if (one_letter && connector != "in") {
                    continue;
                }
                emit(phrase_ending_at(items, at - 2, lexicon), *type);
                continue;
            }
            if (!one_letter) {
                emit(phrase_ending_at(items, at - 1, lexicon), *type);
            }
        }
    }
    return out;
}

std::vector<UnitPair> mine_unit_training_data(std::span<const TableRecord> records, const QuantityOntology& ontology,
                                              const PosLexicon& lexicon)
{
    std::vector<UnitPair> out;
    std::set<UnitPair> seen;
    for (const auto& record : records) {
        for (const auto& units : record.fields) {
            for (const auto& unit : units) {
                for (auto& pair : mine_units_in_text(unit, ontology, lexicon)) {
                    if (seen.insert(pair).second) {
                        out.push_back(std::move(pair));
                    }
                }
            }
        }
    }
    return out;
}

void write_unit_pairs(std::ostream& out, std::span<const UnitPair> pairs)
{
    for (const auto& pair : pairs) {
        out << pair.phrase << '\t' << pair.type << '\n';
    }
}

std::vector<UnitPair> read_unit_pairs(std::istream& in)
{
    std::vector<UnitPair> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) {
            continue;
        }
        auto cols = split_tsv(line);
        if (cols.size() != 2 || trim(cols[0]).empty() || trim(cols[1]).empty()) {
            throw FormatError("unit pairs line " + std::to_string(line_no) + ": expected 'phrase<TAB>type'");
        }
        pairs.push_back({std::string(trim(cols[0])), std::string(trim(cols[1]))});
    }
    return pairs;
}

std::vector<UnitPair> read_unit_pairs_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open unit pairs " + path.string());
    }
    return read_unit_pairs(in);
}

}  // namespace tablesearch
