#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tablesearch/index/tokenizer.hpp"

namespace tablesearch {

struct LinkedEntity {
    std::string canonical;
    std::vector<std::string> tokens;  ///< index terms of the canonical name
    double rho = 0.0;                 ///< linker confidence
    std::size_t begin = 0;            ///< matched query term span [begin, end)
    std::size_t end = 0;

    bool operator==(const LinkedEntity&) const = default;
};

/// Dictionary entity linker: surface form -> canonical entity with a
/// commonness prior. Surface forms are keyed by their index terms, so
/// "gravitational forces" and "gravitational force" link alike.
class Gazetteer {
public:
    Gazetteer() = default;
    explicit Gazetteer(Tokenizer tokenizer) : tokenizer_(std::move(tokenizer)) {}

    /// TSV "surface<TAB>canonical<TAB>prior"; '#' starts a comment line.
    /// Throws FormatError on a malformed line or a repeated surface form.
    static Gazetteer read(std::istream& in, Tokenizer tokenizer = {});
    static Gazetteer load(const std::filesystem::path& path, Tokenizer tokenizer = {});

    /// Throws std::invalid_argument for an empty surface or a prior outside (0, 1].
    void add(std::string_view surface, std::string canonical, double prior);

    /// Greedy longest match, left to right, over the query's index terms.
    /// rho = prior * min(1, span / canonical length). An entity matched twice
    /// keeps its best confidence.
    [[nodiscard]] std::vector<LinkedEntity> link(std::span<const std::string> query_terms) const;
    [[nodiscard]] std::vector<LinkedEntity> link(std::string_view query) const;

    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] const Tokenizer& tokenizer() const { return tokenizer_; }

private:
    struct Entry {
        std::string canonical;
        std::vector<std::string> canonical_tokens;
        double prior = 0.0;
    };

    Tokenizer tokenizer_;
    std::map<std::vector<std::string>, Entry> entries_;
    std::size_t max_span_ = 0;
};

}  // namespace tablesearch
