#pragma once

#include <string>

#include "tablesearch/ranker/query_node.hpp"

namespace tablesearch {

/// Pretty-print a query tree in Indri query-language syntax, e.g.
///
///   #max(
///     #wand(
///       0.85 #and( newtonian gravity ).(caption)
///       0.1 #1( newtonian gravity ).(caption)
///       0.05 #uw8( newtonian gravity ).(caption)
///     )
///     ...
std::string to_indri(const QueryNode& node);

}  // namespace tablesearch
