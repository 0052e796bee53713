#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tablesearch/index/index.hpp"
#include "tablesearch/ranker/params.hpp"
#include "tablesearch/ranker/query_node.hpp"

namespace tablesearch {

struct RankedTable {
    std::string table_id;
    double score = 0.0;

    bool operator==(const RankedTable&) const = default;
};

inline constexpr std::size_t kDefaultDepth = 100;

/// Tables containing at least one leaf term of the tree, in index order.
std::vector<TableNo> candidate_tables(const Index& index, const QueryNode& node);

/// Score = tree log-belief + log prior (when enabled). Highest first, ties by
/// ascending table id, at most k entries. Tables matching no query term are
/// not scored.
std::vector<RankedTable> rank(const Index& index, const QueryNode& node, const ModelParams& params,
                              std::size_t k = kDefaultDepth);

/// Sort by descending score then ascending table id; keep the first k.
void sort_ranking(std::vector<RankedTable>& ranking, std::size_t k);

}  // namespace tablesearch
