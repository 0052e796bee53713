#pragma once

#include <span>
#include <string>
#include <vector>

#include "tablesearch/analyzed_query.hpp"
#include "tablesearch/ranker/params.hpp"
#include "tablesearch/ranker/query_node.hpp"

namespace tablesearch {

/// #and over one #wsum per token, each #wsum mixing the token's belief in
/// every positively weighted field. Throws QueryError for an empty query.
QueryNode build_query_terms(std::span<const std::string> tokens, std::span<const FieldWeight> field_weights);

/// Sequential dependence model of a token sequence against one scope:
/// #wand(w1 #and(terms) w2 #and(#1 bigrams) w3 #and(#uwN bigrams)).
/// A single token reduces to the term itself.
QueryNode build_sdm_node(std::span<const std::string> tokens, FieldScope scope, const SdmWeights& sdm,
                         unsigned width = 8);

/// #max over fields of the concept's SDM representation in that field.
QueryNode build_concept_node(std::span<const std::string> tokens, const SdmWeights& sdm,
                             std::span<const FieldScope> fields, unsigned width = 8);

/// #max over fields of #and(unit symbols).(field).
QueryNode build_quantity_node(std::span<const std::string> units, std::span<const FieldScope> fields);

/// Weighted combination of the term, concept and quantity components.
/// A missing component hands its weight to the term component; with
/// alpha = beta = 0 the result is exactly build_query_terms.
QueryNode build_full_query(const AnalyzedQuery& query, const ModelParams& params);

}  // namespace tablesearch
