#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tablesearch/corpus/field_type.hpp"

namespace tablesearch {

/// Structured query tree over probabilistic operators.
///
/// Leaves (term, ordered window, unordered window) carry the scope they are
/// matched against. Operators combine child log-beliefs:
///   and   mean of child scores
///   wand  weighted mean, weights normalized to sum 1
///   wsum  log of the weighted average of child probabilities
///   max   best child
class QueryNode {
public:
    enum class Kind : std::uint8_t { term, ordered_window, unordered_window, and_, wand, wsum, max };

    static QueryNode term(std::string term, FieldScope scope = FieldScope::whole_table());
    static QueryNode ordered_window(std::vector<std::string> terms, FieldScope scope = FieldScope::whole_table());
    static QueryNode unordered_window(std::vector<std::string> terms, unsigned width = 8,
                                      FieldScope scope = FieldScope::whole_table());
    static QueryNode and_of(std::vector<QueryNode> children);
    static QueryNode wand(std::vector<double> weights, std::vector<QueryNode> children);
    static QueryNode wsum(std::vector<double> weights, std::vector<QueryNode> children);
    static QueryNode max_of(std::vector<QueryNode> children);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_leaf() const
    {
        return kind_ == Kind::term || kind_ == Kind::ordered_window || kind_ == Kind::unordered_window;
    }

    /// Leaf terms: one for a term node, the window sequence otherwise.
    [[nodiscard]] const std::vector<std::string>& terms() const { return terms_; }
    [[nodiscard]] FieldScope scope() const { return scope_; }
    [[nodiscard]] unsigned width() const { return width_; }

    [[nodiscard]] const std::vector<QueryNode>& children() const { return children_; }
    /// Operator weights; empty for and/max.
    [[nodiscard]] const std::vector<double>& weights() const { return weights_; }

    /// Number of leaves in the tree.
    [[nodiscard]] std::size_t leaf_count() const;

    bool operator==(const QueryNode&) const = default;

private:
    Kind kind_ = Kind::and_;
    std::vector<std::string> terms_;
    FieldScope scope_;
    unsigned width_ = 0;
    std::vector<QueryNode> children_;
    std::vector<double> weights_;
};

}  // namespace tablesearch
