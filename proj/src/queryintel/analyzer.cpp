#include "tablesearch/queryintel/analyzer.hpp"

#include <algorithm>

namespace tablesearch {

std::string_view concept_mode_name(ConceptMode mode)
{
    return mode == ConceptMode::entity ? "entity" : "noun_phrase";
}

std::optional<ConceptMode> concept_mode_from_name(std::string_view name)
{
    if (name == "entity") {
        return ConceptMode::entity;
    }
    if (name == "noun_phrase") {
        return ConceptMode::noun_phrase;
    }
    return std::nullopt;
}

void normalize_weights(std::vector<Concept>& concepts)
{
    double total = 0.0;
    for (const auto& c : concepts) {
        total += c.raw_score;
    }
    for (auto& c : concepts) {
        c.weight = total > 0.0 ? c.raw_score / total : 1.0 / static_cast<double>(concepts.size());
    }
}

QueryAnalyzer::QueryAnalyzer(AnalyzerResources resources) : resources_(std::move(resources))
{
    if (resources_.ontology && resources_.classifier) {
        extractor_.emplace(*resources_.ontology, resources_.classifier->cooccurrence());
    }
}

std::vector<Concept> QueryAnalyzer::entity_concepts(std::string_view query) const
{
    std::vector<Concept> concepts;
    if (!resources_.gazetteer) {
        return concepts;
    }
    auto terms = resources_.tokenizer.terms(query);
    for (auto& entity : resources_.gazetteer->link(terms)) {
        Concept c;
        c.text = entity.canonical;
        c.tokens = std::move(entity.tokens);
        c.source = ConceptSource::entity;
        c.raw_score = entity.rho;
        concepts.push_back(std::move(c));
    }
    normalize_weights(concepts);
    return concepts;
}

std::vector<Concept> QueryAnalyzer::noun_phrase_concepts(std::string_view query) const
{
    std::vector<Concept> concepts;
    if (!resources_.lexicon) {
        return concepts;
    }
    for (auto& phrase : extract_noun_phrases(query, *resources_.lexicon)) {
        auto tokens = resources_.tokenizer.terms(phrase);
        if (tokens.empty()) {
            continue;
        }
        bool repeated = std::any_of(concepts.begin(), concepts.end(),
                                    [&](const Concept& c) { return c.tokens == tokens; });
        if (repeated) {
            continue;
        }
        Concept c;
        c.text = std::move(phrase);
        c.tokens = std::move(tokens);
        c.source = ConceptSource::noun_phrase;
        if (resources_.index == nullptr) {
            c.raw_score = 1.0;
        } else {
            auto features = keyness_features(c.tokens, *resources_.index);
            c.raw_score = resources_.keyness ? resources_.keyness->score(features) : mean_idf_keyness(features);
        }
        concepts.push_back(std::move(c));
    }
    normalize_weights(concepts);
    return concepts;
}

std::optional<std::string> QueryAnalyzer::classify(std::span<const std::string> concept_terms) const
{
    if (!extractor_) {
        return std::nullopt;
    }
    return resources_.classifier->classify(concept_terms, *extractor_);
}

AnalyzedQuery QueryAnalyzer::analyze(std::string_view query, ConceptMode mode) const
{
    AnalyzedQuery out;
    out.text = std::string(query);
    out.tokens = resources_.tokenizer.terms(query);
    out.concepts = mode == ConceptMode::entity ? entity_concepts(query) : noun_phrase_concepts(query);

    for (auto& c : out.concepts) {
        c.quantity = classify(c.tokens);
        if (!c.quantity) {
            continue;
        }
        bool known = std::any_of(out.quantities.begin(), out.quantities.end(),
                                 [&](const QuantityTerm& q) { return q.type == *c.quantity; });
        const auto* type = resources_.ontology->find(*c.quantity);
        if (!known && type != nullptr) {
            out.quantities.push_back({type->name, type->terms, 0.0});
        }
    }
    for (auto& q : out.quantities) {
        q.weight = 1.0 / static_cast<double>(out.quantities.size());
    }
    return out;
}

}  // namespace tablesearch
