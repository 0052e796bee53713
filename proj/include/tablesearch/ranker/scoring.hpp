#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "tablesearch/index/index.hpp"
#include "tablesearch/ranker/params.hpp"
#include "tablesearch/ranker/query_node.hpp"

namespace tablesearch {

/// p(w|f) = lambda * (c + mu * p(w|C)) / (|f| + mu) + (1 - lambda) * p(w|C)
double smoothed_term_prob(std::uint64_t count, std::uint64_t field_length, double corpus_prob,
                          const SmoothingParams& params);

/// p(w|C) for a term seen collection_count times in a collection of the
/// given length; unseen terms get 0.5 / (length + 1).
double corpus_probability(std::uint64_t collection_count, std::uint64_t collection_length);

/// sum over fields of p(w|f) p(f|t).
double term_mixture_prob(std::string_view term, TableNo table, const Index& index,
                         std::span<const FieldWeight> field_weights, const ModelParams& params);

/// Smoothed numeric-quality prior (numeric + 1) / (cells + 2).
double table_prior(const TableEntry& table);

/// Scores query trees against tables. Holds a query-local cache of window
/// collection statistics, so use one evaluator per query (or per thread).
class QueryEvaluator {
public:
    QueryEvaluator(const Index& index, const ModelParams& params);

    /// Log-belief of the tree for one table. Throws QueryError on an
    /// operator without children.
    [[nodiscard]] double evaluate(const QueryNode& node, TableNo table) const;

    /// Smoothed probability of a leaf (term or window) in one table.
    [[nodiscard]] double leaf_probability(const QueryNode& leaf, TableNo table) const;

    /// Collection model p(w|C) of a leaf under the configured corpus model.
    [[nodiscard]] double leaf_corpus_probability(const QueryNode& leaf) const;

private:
    using CacheKey = std::tuple<QueryNode::Kind, std::vector<std::string>, FieldScope, unsigned>;

    [[nodiscard]] FieldScope model_scope(FieldScope leaf_scope) const;

    const Index& index_;
    const ModelParams& params_;
    mutable std::map<CacheKey, double> corpus_prob_cache_;
};

}  // namespace tablesearch
