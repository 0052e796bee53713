#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tablesearch {

enum class ConceptSource { entity, noun_phrase };

struct Concept {
    std::string text;
    std::vector<std::string> tokens;  ///< index terms
    double weight = 0.0;              ///< p(c|q)
    ConceptSource source = ConceptSource::entity;
    double raw_score = 0.0;           ///< linker confidence or keyness
    /// Inferred quantity type, empty when dimensionless.
    std::optional<std::string> quantity;

    bool operator==(const Concept&) const = default;
};

struct QuantityTerm {
    std::string type;
    std::vector<std::string> units;  ///< index terms of the unit symbols
    double weight = 0.0;             ///< p(u|q), uniform over inferred types

    bool operator==(const QuantityTerm&) const = default;
};

/// A keyword query after concept identification and quantity expansion.
/// Entity and noun-phrase analysis both produce this shape.
struct AnalyzedQuery {
    std::string text;
    std::vector<std::string> tokens;  ///< index terms of the whole query
    std::vector<Concept> concepts;
    std::vector<QuantityTerm> quantities;

    bool operator==(const AnalyzedQuery&) const = default;
};

}  // namespace tablesearch
