#include "tablesearch/ranker/builders.hpp"

#include "tablesearch/error.hpp"

namespace tablesearch {

namespace {

QueryNode and_or_single(std::vector<QueryNode> children)
{
    if (children.size() == 1) {
        return std::move(children.front());
    }
    return QueryNode::and_of(std::move(children));
}

QueryNode max_or_single(std::vector<QueryNode> children)
{
    if (children.size() == 1) {
        return std::move(children.front());
    }
    return QueryNode::max_of(std::move(children));
}

}  // namespace

QueryNode build_query_terms(std::span<const std::string> tokens, std::span<const FieldWeight> field_weights)
{
    if (tokens.empty()) {
        throw QueryError("empty query");
    }
    std::vector<QueryNode> per_token;
    for (const auto& token : tokens) {
        std::vector<double> weights;
        std::vector<QueryNode> leaves;
        for (const auto& fw : field_weights) {
            if (fw.weight > 0.0) {
                weights.push_back(fw.weight);
                leaves.push_back(QueryNode::term(token, fw.scope));
            }
        }
        if (leaves.empty()) {
            throw QueryError("no field has a positive weight");
        }
        per_token.push_back(QueryNode::wsum(std::move(weights), std::move(leaves)));
    }
    return QueryNode::and_of(std::move(per_token));
}

QueryNode build_sdm_node(std::span<const std::string> tokens, FieldScope scope, const SdmWeights& sdm,
                         unsigned width)
{
    if (tokens.empty()) {
        throw QueryError("empty concept");
    }
    if (tokens.size() == 1) {
        return QueryNode::term(tokens.front(), scope);
    }
    std::vector<QueryNode> unigrams;
    std::vector<QueryNode> ordered;
    std::vector<QueryNode> unordered;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        unigrams.push_back(QueryNode::term(tokens[i], scope));
        if (i + 1 < tokens.size()) {
            std::vector<std::string> bigram{tokens[i], tokens[i + 1]};
            ordered.push_back(QueryNode::ordered_window(bigram, scope));
            unordered.push_back(QueryNode::unordered_window(std::move(bigram), width, scope));
        }
    }
    std::vector<double> weights;
    std::vector<QueryNode> parts;
    auto add = [&](double w, std::vector<QueryNode> nodes) {
        if (w > 0.0) {
            weights.push_back(w);
            parts.push_back(and_or_single(std::move(nodes)));
        }
    };
    add(sdm.unigram, std::move(unigrams));
    add(sdm.ordered, std::move(ordered));
    add(sdm.unordered, std::move(unordered));
    if (parts.empty()) {
        throw QueryError("all SDM weights are zero");
    }
    return QueryNode::wand(std::move(weights), std::move(parts));
}

QueryNode build_concept_node(std::span<const std::string> tokens, const SdmWeights& sdm,
                             std::span<const FieldScope> fields, unsigned width)
{
    if (fields.empty()) {
        throw QueryError("no fields to match the concept against");
    }
    std::vector<QueryNode> per_field;
    for (auto scope : fields) {
        per_field.push_back(build_sdm_node(tokens, scope, sdm, width));
    }
    return max_or_single(std::move(per_field));
}

QueryNode build_quantity_node(std::span<const std::string> units, std::span<const FieldScope> fields)
{
    if (units.empty()) {
        throw QueryError("quantity without unit symbols");
    }
    if (fields.empty()) {
        throw QueryError("no fields to match the quantity against");
    }
    std::vector<QueryNode> per_field;
    for (auto scope : fields) {
        std::vector<QueryNode> leaves;
        for (const auto& unit : units) {
            leaves.push_back(QueryNode::term(unit, scope));
        }
        per_field.push_back(and_or_single(std::move(leaves)));
    }
    return max_or_single(std::move(per_field));
}

QueryNode build_full_query(const AnalyzedQuery& query, const ModelParams& params)
{
    QueryNode terms = build_query_terms(query.tokens, params.field_weights);
    const auto fields = params.match_fields();

    std::vector<double> concept_weights;
    std::vector<QueryNode> concept_nodes;
    for (const auto& c : query.concepts) {
        if (!c.tokens.empty() && c.weight > 0.0) {
            concept_weights.push_back(c.weight);
            concept_nodes.push_back(build_concept_node(c.tokens, params.sdm, fields, params.window_width));
        }
    }
    std::vector<double> quantity_weights;
    std::vector<QueryNode> quantity_nodes;
    for (const auto& q : query.quantities) {
        if (!q.units.empty() && q.weight > 0.0) {
            quantity_weights.push_back(q.weight);
            quantity_nodes.push_back(build_quantity_node(q.units, fields));
        }
    }

    double terms_weight = 1.0 - params.alpha - params.beta;
    double concepts_weight = params.alpha;
    double quantities_weight = params.beta;
    if (concept_nodes.empty()) {
        terms_weight += concepts_weight;
        concepts_weight = 0.0;
    }
    if (quantity_nodes.empty()) {
        terms_weight += quantities_weight;
        quantities_weight = 0.0;
    }
    if (concepts_weight <= 0.0 && quantities_weight <= 0.0) {
        return terms;
    }

    std::vector<double> weights;
    std::vector<QueryNode> parts;
    if (terms_weight > 1e-12) {
        weights.push_back(terms_weight);
        parts.push_back(std::move(terms));
    }
    if (concepts_weight > 0.0) {
        weights.push_back(concepts_weight);
        parts.push_back(QueryNode::wand(std::move(concept_weights), std::move(concept_nodes)));
    }
    if (quantities_weight > 0.0) {
        weights.push_back(quantities_weight);
        parts.push_back(QueryNode::wand(std::move(quantity_weights), std::move(quantity_nodes)));
    }
    return QueryNode::wand(std::move(weights), std::move(parts));
}

}  // namespace tablesearch
