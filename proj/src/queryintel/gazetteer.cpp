#include "tablesearch/queryintel/gazetteer.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "tablesearch/error.hpp"
#include "tablesearch/queryintel/text_util.hpp"

namespace tablesearch {

Gazetteer Gazetteer::read(std::istream& in, Tokenizer tokenizer)
{
    Gazetteer gazetteer(std::move(tokenizer));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) {
            continue;
        }
        auto cols = split_tsv(line);
        if (cols.size() != 3) {
            throw FormatError("gazetteer line " + std::to_string(line_no) + ": expected 3 columns");
        }
        double prior = parse_double(cols[2], "gazetteer line " + std::to_string(line_no));
        auto key = gazetteer.tokenizer_.terms(cols[0]);
        if (gazetteer.entries_.contains(key)) {
            throw FormatError("gazetteer line " + std::to_string(line_no) + ": repeated surface form '" +
                              std::string(cols[0]) + "'");
        }
        try {
            gazetteer.add(cols[0], std::string(cols[1]), prior);
        } catch (const std::invalid_argument& e) {
            throw FormatError("gazetteer line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return gazetteer;
}

Gazetteer Gazetteer::load(const std::filesystem::path& path, Tokenizer tokenizer)
{
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open gazetteer " + path.string());
    }
    return read(in, std::move(tokenizer));
}

void Gazetteer::add(std::string_view surface, std::string canonical, double prior)
{
    if (!(prior > 0.0 && prior <= 1.0)) {
        throw std::invalid_argument("prior must lie in (0, 1]");
    }
    auto key = tokenizer_.terms(surface);
    if (key.empty()) {
        throw std::invalid_argument("surface form has no index terms: '" + std::string(surface) + "'");
    }
    auto canonical_tokens = tokenizer_.terms(canonical);
    if (canonical_tokens.empty()) {
        canonical_tokens = key;
    }
    max_span_ = std::max(max_span_, key.size());
    entries_[std::move(key)] = Entry{std::move(canonical), std::move(canonical_tokens), prior};
}

std::vector<LinkedEntity> Gazetteer::link(std::span<const std::string> query_terms) const
{
    std::vector<LinkedEntity> out;
    std::size_t i = 0;
    while (i < query_terms.size()) {
        std::size_t longest = std::min(max_span_, query_terms.size() - i);
        const Entry* hit = nullptr;
        std::size_t span = 0;
        for (std::size_t n = longest; n >= 1 && hit == nullptr; --n) {
            std::vector<std::string> key(query_terms.begin() + static_cast<std::ptrdiff_t>(i),
                                         query_terms.begin() + static_cast<std::ptrdiff_t>(i + n));
            if (auto it = entries_.find(key); it != entries_.end()) {
                hit = &it->second;
                span = n;
            }
        }
        if (hit == nullptr) {
            ++i;
            continue;
        }
        double coverage = static_cast<double>(span) / static_cast<double>(hit->canonical_tokens.size());
        double rho = hit->prior * std::min(1.0, coverage);
        auto same = std::find_if(out.begin(), out.end(),
                                 [&](const LinkedEntity& e) { return e.canonical == hit->canonical; });
        if (same == out.end()) {
            out.push_back({hit->canonical, hit->canonical_tokens, rho, i, i + span});
        } else {
            same->rho = std::max(same->rho, rho);
        }
        i += span;
    }
    return out;
}

std::vector<LinkedEntity> Gazetteer::link(std::string_view query) const
{
    auto terms = tokenizer_.terms(query);
    return link(terms);
}

}  // namespace tablesearch
