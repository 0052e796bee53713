#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "tablesearch/index/index.hpp"
#include "tablesearch/ranker/params.hpp"
#include "tablesearch/ranker/query_node.hpp"
#include "tablesearch/ranker/rank.hpp"

namespace tablesearch {

struct BM25Params {
    double k1 = 1.2;
    double b = 0.75;
    /// BM25F only: per-field boost and length normalization.
    std::array<double, kFieldCount> field_weight = {1, 1, 1, 1, 1, 1, 1, 1};
    std::array<double, kFieldCount> field_b = {0.75, 0.75, 0.75, 0.75, 0.75, 0.75, 0.75, 0.75};

    /// Throws std::invalid_argument on k1 < 0, b outside [0, 1] or a negative weight.
    void validate() const;
};

/// ln((N - df + 0.5) / (df + 0.5) + 1)
double bm25_idf(std::size_t table_count, std::uint32_t df);

/// BM25 over the whole table as one document. Repeated query tokens count
/// once per occurrence.
double bm25_score(std::span<const std::string> query_tokens, TableNo table, const Index& index,
                  const BM25Params& params);

/// BM25F: per-field length-normalized, weighted term frequencies pooled
/// before one saturation.
double bm25f_score(std::span<const std::string> query_tokens, TableNo table, const Index& index,
                   const BM25Params& params);

/// Sparse TTF-ITTF vector: weight(w) = (sum_f weight_f tf(w, f)) * ln(T / ctf(w)),
/// T the corpus token count.
std::vector<std::pair<TermId, double>> tablerank_vector(TableNo table, const Index& index,
                                                        std::span<const FieldWeight> field_weights);

/// Cosine between the TTF-ITTF vectors of the query and the table.
double tablerank_score(std::span<const std::string> query_tokens, TableNo table, const Index& index,
                       std::span<const FieldWeight> field_weights);

/// Full-text query likelihood: #and over whole-table terms.
QueryNode indri_bow_query(std::span<const std::string> tokens);
/// Sequential dependence model over the whole table.
QueryNode indri_sdm_query(std::span<const std::string> tokens, const SdmWeights& sdm = {}, unsigned width = 8);

enum class BaselineKind { bm25, bm25f, tablerank };

/// Scores every table holding a query token; same ordering and depth rules
/// as rank().
std::vector<RankedTable> rank_baseline(BaselineKind kind, std::span<const std::string> query_tokens,
                                       const Index& index, const BM25Params& bm25,
                                       std::span<const FieldWeight> field_weights, std::size_t k = kDefaultDepth);

}  // namespace tablesearch
