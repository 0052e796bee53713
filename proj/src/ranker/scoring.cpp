#include "tablesearch/ranker/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tablesearch/error.hpp"
#include "tablesearch/index/window.hpp"

namespace tablesearch {

double smoothed_term_prob(std::uint64_t count, std::uint64_t field_length, double corpus_prob,
                          const SmoothingParams& params)
{
    const auto c = static_cast<double>(count);
    const auto len = static_cast<double>(field_length);
    double dirichlet = 0.0;
    if (len + params.mu > 0.0) {
        dirichlet = (c + params.mu * corpus_prob) / (len + params.mu);
    } else {
        // mu = 0 on an empty field: nothing to estimate from but the corpus
        dirichlet = corpus_prob;
    }
    return params.lambda * dirichlet + (1.0 - params.lambda) * corpus_prob;
}

double corpus_probability(std::uint64_t collection_count, std::uint64_t collection_length)
{
    if (collection_count == 0 || collection_length == 0) {
        return 0.5 / (static_cast<double>(collection_length) + 1.0);
    }
    return static_cast<double>(collection_count) / static_cast<double>(collection_length);
}

double table_prior(const TableEntry& table)
{
    return (static_cast<double>(table.numeric_cell_count) + 1.0) / (static_cast<double>(table.total_cell_count) + 2.0);
}

double term_mixture_prob(std::string_view term, TableNo table, const Index& index,
                         std::span<const FieldWeight> field_weights, const ModelParams& params)
{
    QueryEvaluator evaluator(index, params);
    double p = 0.0;
    for (const auto& fw : field_weights) {
        p += fw.weight * evaluator.leaf_probability(QueryNode::term(std::string(term), fw.scope), table);
    }
    return p;
}

QueryEvaluator::QueryEvaluator(const Index& index, const ModelParams& params) : index_(index), params_(params) {}

FieldScope QueryEvaluator::model_scope(FieldScope leaf_scope) const
{
    // A field type absent from the whole collection has no model of its own.
    if (params_.corpus_model == CorpusModel::global || index_.stats().length(leaf_scope) == 0) {
        return FieldScope::whole_table();
    }
    return leaf_scope;
}

double QueryEvaluator::leaf_corpus_probability(const QueryNode& leaf) const
{
    CacheKey key{leaf.kind(), leaf.terms(), leaf.scope(), leaf.width()};
    if (auto it = corpus_prob_cache_.find(key); it != corpus_prob_cache_.end()) {
        return it->second;
    }
    const auto scope = model_scope(leaf.scope());
    TermStats stats;
    if (leaf.kind() == QueryNode::Kind::term) {
        if (auto id = index_.term_id(leaf.terms().front())) {
            stats = index_.stats().term(*id, scope);
        }
    } else {
        auto spec = leaf.kind() == QueryNode::Kind::ordered_window ? WindowSpec::ordered()
                                                                    : WindowSpec::unordered(leaf.width());
        stats = window_collection_stats(index_, leaf.terms(), scope, spec);
    }
    double p = corpus_probability(stats.ctf, index_.stats().length(scope));
    corpus_prob_cache_.emplace(std::move(key), p);
    return p;
}

double QueryEvaluator::leaf_probability(const QueryNode& leaf, TableNo table) const
{
    std::uint64_t count = 0;
    if (leaf.kind() == QueryNode::Kind::term) {
        if (auto id = index_.term_id(leaf.terms().front())) {
            count = index_.count(*id, table, leaf.scope());
        }
    } else {
        auto spec = leaf.kind() == QueryNode::Kind::ordered_window ? WindowSpec::ordered()
                                                                    : WindowSpec::unordered(leaf.width());
        count = window_count(index_, table, leaf.terms(), leaf.scope(), spec);
    }
    return smoothed_term_prob(count, index_.field_length(table, leaf.scope()), leaf_corpus_probability(leaf),
                              params_.smoothing_for(leaf.scope()));
}

double QueryEvaluator::evaluate(const QueryNode& node, TableNo table) const
{
    if (node.is_leaf()) {
        return std::log(leaf_probability(node, table));
    }
    const auto& children = node.children();
    if (children.empty()) {
        throw QueryError("operator without children");
    }
    switch (node.kind()) {
    case QueryNode::Kind::and_: {
        double sum = 0.0;
        for (const auto& c : children) {
            sum += evaluate(c, table);
        }
        return sum / static_cast<double>(children.size());
    }
    case QueryNode::Kind::wand: {
        const auto& w = node.weights();
        double total = std::accumulate(w.begin(), w.end(), 0.0);
        double sum = 0.0;
        for (std::size_t i = 0; i < children.size(); ++i) {
            sum += (w[i] / total) * evaluate(children[i], table);
        }
        return sum;
    }
    case QueryNode::Kind::wsum: {
        const auto& w = node.weights();
        double total = std::accumulate(w.begin(), w.end(), 0.0);
        std::vector<double> scores;
        scores.reserve(children.size());
        for (const auto& c : children) {
            scores.push_back(evaluate(c, table));
        }
        double top = *std::max_element(scores.begin(), scores.end());
        double sum = 0.0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            sum += (w[i] / total) * std::exp(scores[i] - top);
        }
        return top + std::log(sum);
    }
    case QueryNode::Kind::max: {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& c : children) {
            best = std::max(best, evaluate(c, table));
        }
        return best;
    }
    default: break;
    }
    throw QueryError("unknown operator");
}

}  // namespace tablesearch
