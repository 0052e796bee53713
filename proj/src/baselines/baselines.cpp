#include "tablesearch/baselines/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "tablesearch/ranker/builders.hpp"

namespace tablesearch {

void BM25Params::validate() const
{
    if (!(k1 >= 0.0)) {
        throw std::invalid_argument("k1 must be non-negative");
    }
    auto check_b = [](double value) {
        if (!(value >= 0.0 && value <= 1.0)) {
            throw std::invalid_argument("b must lie in [0, 1]");
        }
    };
    check_b(b);
    for (std::size_t f = 0; f < kFieldCount; ++f) {
        check_b(field_b[f]);
        if (!(field_weight[f] >= 0.0)) {
            throw std::invalid_argument("BM25F field weights must be non-negative");
        }
    }
}

double bm25_idf(std::size_t table_count, std::uint32_t df)
{
    auto n = static_cast<double>(table_count);
    auto d = static_cast<double>(df);
    return std::log((n - d + 0.5) / (d + 0.5) + 1.0);
}

double bm25_score(std::span<const std::string> query_tokens, TableNo table, const Index& index,
                  const BM25Params& params)
{
    const auto& stats = index.stats();
    double avg_length = stats.table_count == 0 ? 0.0
                                               : static_cast<double>(stats.total_tokens) /
                                                     static_cast<double>(stats.table_count);
    double length = static_cast<double>(index.field_length(table, FieldScope::whole_table()));
    double norm = avg_length > 0.0 ? 1.0 - params.b + params.b * length / avg_length : 1.0;
    double score = 0.0;
    for (const auto& token : query_tokens) {
        auto id = index.term_id(token);
        if (!id) {
            continue;
        }
        auto tf = static_cast<double>(index.count(*id, table, FieldScope::whole_table()));
        if (tf == 0.0) {
            continue;
        }
        double idf = bm25_idf(stats.table_count, stats.corpus[*id].df);
        score += idf * tf * (params.k1 + 1.0) / (tf + params.k1 * norm);
    }
    return score;
}

double bm25f_score(std::span<const std::string> query_tokens, TableNo table, const Index& index,
                   const BM25Params& params)
{
    const auto& stats = index.stats();
    std::array<double, kFieldCount> norm{};
    for (std::size_t f = 0; f < kFieldCount; ++f) {
        double avg = stats.table_count == 0 ? 0.0
                                            : static_cast<double>(stats.field_tokens[f]) /
                                                  static_cast<double>(stats.table_count);
        double length = static_cast<double>(index.table(table).field_length[f]);
        norm[f] = avg > 0.0 ? 1.0 - params.field_b[f] + params.field_b[f] * length / avg : 1.0;
    }
    double score = 0.0;
    for (const auto& token : query_tokens) {
        auto id = index.term_id(token);
        if (!id) {
            continue;
        }
        double pooled = 0.0;
        for (std::size_t f = 0; f < kFieldCount; ++f) {
            auto tf = static_cast<double>(index.count(*id, table, kAllFields[f]));
            if (tf > 0.0 && norm[f] > 0.0) {
                pooled += params.field_weight[f] * tf / norm[f];
            }
        }
        if (pooled == 0.0) {
            continue;
        }
        double idf = bm25_idf(stats.table_count, stats.corpus[*id].df);
        score += idf * pooled * (params.k1 + 1.0) / (pooled + params.k1);
    }
    return score;
}

namespace {

double ittf(const Index& index, TermId id)
{
    auto ctf = index.stats().corpus[id].ctf;
    if (ctf == 0) {
        return 0.0;
    }
    return std::log(static_cast<double>(index.stats().total_tokens) / static_cast<double>(ctf));
}

std::array<double, kFieldCount> weights_by_field(std::span<const FieldWeight> field_weights)
{
    std::array<double, kFieldCount> out{};
    for (const auto& fw : field_weights) {
        if (fw.scope.is_whole()) {
            out.fill(fw.weight);
            return out;
        }
        out[field_index(fw.scope.field())] = fw.weight;
    }
    return out;
}

}  // namespace

std::vector<std::pair<TermId, double>> tablerank_vector(TableNo table, const Index& index,
                                                        std::span<const FieldWeight> field_weights)
{
    auto weights = weights_by_field(field_weights);
    std::map<TermId, double> ttf;
    for (std::size_t f = 0; f < kFieldCount; ++f) {
        if (weights[f] == 0.0) {
            continue;
        }
        for (const auto& tf : index.term_vector(table, kAllFields[f])) {
            ttf[tf.term] += weights[f] * tf.count;
        }
    }
    std::vector<std::pair<TermId, double>> out;
    for (const auto& [id, value] : ttf) {
        double w = value * ittf(index, id);
        if (w > 0.0) {
            out.emplace_back(id, w);
        }
    }
    return out;
}

double tablerank_score(std::span<const std::string> query_tokens, TableNo table, const Index& index,
                       std::span<const FieldWeight> field_weights)
{
    std::map<TermId, double> query;
    for (const auto& token : query_tokens) {
        if (auto id = index.term_id(token)) {
            query[*id] += 1.0;
        }
    }
    double query_norm = 0.0;
    for (auto& [id, value] : query) {
        value *= ittf(index, id);
        query_norm += value * value;
    }
    double table_norm = 0.0;
    double dot = 0.0;
    for (const auto& [id, w] : tablerank_vector(table, index, field_weights)) {
        table_norm += w * w;
        if (auto it = query.find(id); it != query.end()) {
            dot += w * it->second;
        }
    }
    if (query_norm == 0.0 || table_norm == 0.0) {
        return 0.0;
    }
    return dot / (std::sqrt(query_norm) * std::sqrt(table_norm));
}

QueryNode indri_bow_query(std::span<const std::string> tokens)
{
    std::vector<QueryNode> leaves;
    for (const auto& token : tokens) {
        leaves.push_back(QueryNode::term(token, FieldScope::whole_table()));
    }
    return QueryNode::and_of(std::move(leaves));
}

QueryNode indri_sdm_query(std::span<const std::string> tokens, const SdmWeights& sdm, unsigned width)
{
    if (tokens.size() < 2) {
        return indri_bow_query(tokens);
    }
    return build_sdm_node(tokens, FieldScope::whole_table(), sdm, width);
}

std::vector<RankedTable> rank_baseline(BaselineKind kind, std::span<const std::string> query_tokens,
                                       const Index& index, const BM25Params& bm25,
                                       std::span<const FieldWeight> field_weights, std::size_t k)
{
    std::vector<RankedTable> ranking;
    if (k == 0) {
        return ranking;
    }
    std::vector<TableNo> tables;
    for (const auto& token : query_tokens) {
        if (auto id = index.term_id(token)) {
            for (const auto& p : index.postings(*id)) {
                tables.push_back(p.table);
            }
        }
    }
    std::sort(tables.begin(), tables.end());
    tables.erase(std::unique(tables.begin(), tables.end()), tables.end());
    for (auto t : tables) {
        double score = 0.0;
        switch (kind) {
        case BaselineKind::bm25: score = bm25_score(query_tokens, t, index, bm25); break;
        case BaselineKind::bm25f: score = bm25f_score(query_tokens, t, index, bm25); break;
        case BaselineKind::tablerank: score = tablerank_score(query_tokens, t, index, field_weights); break;
        }
        ranking.push_back({index.table(t).table_id, score});
    }
    sort_ranking(ranking, k);
    return ranking;
}

}  // namespace tablesearch
