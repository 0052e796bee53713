#include "tablesearch/queryintel/ontology.hpp"

#include <cctype>
#include <fstream>

#include "tablesearch/error.hpp"
#include "tablesearch/queryintel/text_util.hpp"

namespace tablesearch {

QuantityOntology QuantityOntology::read(std::istream& in, Tokenizer tokenizer)
{
    QuantityOntology ontology;
    ontology.tokenizer_ = std::move(tokenizer);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) {
            continue;
        }
        const std::string where = "ontology line " + std::to_string(line_no);
        auto cols = split_tsv(line);
        if (cols.size() != 4) {
            throw FormatError(where + ": expected 4 columns");
        }
        auto name = std::string(trim(cols[0]));
        auto flag = to_lower(trim(cols[2]));
        if (name.empty()) {
            throw FormatError(where + ": empty type name");
        }
        if (flag == "background") {
            ontology.background_ = std::string(trim(cols[3]));
            continue;
        }
        if (flag != "base" && flag != "derived") {
            continue;
        }
        QuantityType type;
        type.name = name;
        type.kind = flag == "base" ? SiKind::base : SiKind::derived;
        type.description = std::string(trim(cols[3]));
        std::string_view symbols = cols[1];
        while (!symbols.empty()) {
            auto comma = symbols.find(',');
            auto symbol = trim(symbols.substr(0, comma));
            if (!symbol.empty()) {
                type.symbols.emplace_back(symbol);
            }
            symbols = comma == std::string_view::npos ? std::string_view{} : symbols.substr(comma + 1);
        }
        try {
            ontology.add(std::move(type));
        } catch (const std::invalid_argument& e) {
            throw FormatError(where + ": " + e.what());
        }
    }
    return ontology;
}

QuantityOntology QuantityOntology::load(const std::filesystem::path& path, Tokenizer tokenizer)
{
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open ontology " + path.string());
    }
    return read(in, std::move(tokenizer));
}

void QuantityOntology::add(QuantityType type)
{
    if (type.symbols.empty()) {
        throw std::invalid_argument("quantity type " + type.name + " has no unit symbols");
    }
    if (by_name_.contains(type.name) || type.name == kDimensionless) {
        throw std::invalid_argument("quantity type " + type.name + " defined twice");
    }
    type.terms.clear();
    for (const auto& symbol : type.symbols) {
        auto terms = tokenizer_.terms(symbol);
        if (terms.size() != 1) {
            throw std::invalid_argument("unit symbol '" + symbol + "' is not a single index term");
        }
        if (by_term_.contains(terms.front())) {
            throw std::invalid_argument("unit symbol '" + symbol + "' already belongs to " +
                                        types_[by_term_.find(terms.front())->second].name);
        }
        type.terms.push_back(terms.front());
    }
    std::size_t slot = types_.size();
    by_name_.emplace(type.name, slot);
    for (std::size_t i = 0; i < type.symbols.size(); ++i) {
        by_symbol_.emplace(type.symbols[i], slot);
        by_term_.emplace(type.terms[i], slot);
    }
    types_.push_back(std::move(type));
}

const QuantityType* QuantityOntology::find(std::string_view name) const
{
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &types_[it->second];
}

const QuantityType* QuantityOntology::type_of_symbol(std::string_view symbol) const
{
    auto it = by_symbol_.find(symbol);
    return it == by_symbol_.end() ? nullptr : &types_[it->second];
}

const QuantityType* QuantityOntology::type_of_term(std::string_view term) const
{
    auto it = by_term_.find(term);
    return it == by_term_.end() ? nullptr : &types_[it->second];
}

std::string split_camel_case(std::string_view name)
{
    std::string out;
    for (std::size_t i = 0; i < name.size(); ++i) {
        auto c = static_cast<unsigned char>(name[i]);
        if (std::isupper(c) != 0 && i > 0 && std::islower(static_cast<unsigned char>(name[i - 1])) != 0) {
            out += ' ';
        }
        out += static_cast<char>(std::tolower(c));
    }
    return out;
}

}  // namespace tablesearch
