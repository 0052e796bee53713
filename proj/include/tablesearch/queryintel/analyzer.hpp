#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tablesearch/analyzed_query.hpp"
#include "tablesearch/index/index.hpp"
#include "tablesearch/queryintel/gazetteer.hpp"
#include "tablesearch/queryintel/keyness.hpp"
#include "tablesearch/queryintel/ontology.hpp"
#include "tablesearch/queryintel/pos_tagger.hpp"
#include "tablesearch/queryintel/quantity.hpp"

namespace tablesearch {

enum class ConceptMode { entity, noun_phrase };

std::string_view concept_mode_name(ConceptMode mode);
std::optional<ConceptMode> concept_mode_from_name(std::string_view name);

/// Sets weight = raw_score / sum of raw scores. All-zero raw scores give
/// uniform weights.
void normalize_weights(std::vector<Concept>& concepts);

/// Everything the analyzer may use. Missing pieces switch the matching
/// step off: no gazetteer or lexicon means no concepts, no classifier means
/// no quantities, no index means uniform noun-phrase keyness.
struct AnalyzerResources {
    Tokenizer tokenizer;
    std::optional<Gazetteer> gazetteer;
    std::optional<PosLexicon> lexicon;
    std::optional<QuantityOntology> ontology;
    std::optional<QuantityClassifier> classifier;
    std::optional<KeynessModel> keyness;
    const Index* index = nullptr;  ///< for noun-phrase keyness
};

class QueryAnalyzer {
public:
    explicit QueryAnalyzer(AnalyzerResources resources);

    QueryAnalyzer(const QueryAnalyzer&) = delete;
    QueryAnalyzer& operator=(const QueryAnalyzer&) = delete;

    /// Tokens, weighted concepts, and the quantity types inferred for them
    /// (dimensionless dropped, duplicates merged) with uniform weights.
    [[nodiscard]] AnalyzedQuery analyze(std::string_view query, ConceptMode mode) const;

    [[nodiscard]] std::vector<Concept> entity_concepts(std::string_view query) const;
    [[nodiscard]] std::vector<Concept> noun_phrase_concepts(std::string_view query) const;

    /// Quantity type of one concept, nullopt for dimensionless.
    [[nodiscard]] std::optional<std::string> classify(std::span<const std::string> concept_terms) const;

    [[nodiscard]] const AnalyzerResources& resources() const { return resources_; }

private:
    AnalyzerResources resources_;
    std::optional<QuantityFeatureExtractor> extractor_;
};

}  // namespace tablesearch
