#include "tablesearch/ranker/query_node.hpp"

#include "tablesearch/error.hpp"

namespace tablesearch {

namespace {

void check_weights(const std::vector<double>& weights, const std::vector<QueryNode>& children)
{
    if (weights.size() != children.size()) {
        throw QueryError("operator has " + std::to_string(weights.size()) + " weights for " +
                         std::to_string(children.size()) + " children");
    }
    for (double w : weights) {
        if (!(w > 0.0)) {
            throw QueryError("operator weights must be positive");
        }
    }
}

}  // namespace

QueryNode QueryNode::term(std::string term, FieldScope scope)
{
    QueryNode n;
    n.kind_ = Kind::term;
    n.terms_.push_back(std::move(term));
    n.scope_ = scope;
    return n;
}

QueryNode QueryNode::ordered_window(std::vector<std::string> terms, FieldScope scope)
{
    QueryNode n;
    n.kind_ = Kind::ordered_window;
    n.terms_ = std::move(terms);
    n.scope_ = scope;
    n.width_ = 1;
    return n;
}

QueryNode QueryNode::unordered_window(std::vector<std::string> terms, unsigned width, FieldScope scope)
{
    QueryNode n;
    n.kind_ = Kind::unordered_window;
    n.terms_ = std::move(terms);
    n.scope_ = scope;
    n.width_ = width;
    return n;
}

QueryNode QueryNode::and_of(std::vector<QueryNode> children)
{
    QueryNode n;
    n.kind_ = Kind::and_;
    n.children_ = std::move(children);
    return n;
}

QueryNode QueryNode::wand(std::vector<double> weights, std::vector<QueryNode> children)
{
    QueryNode n;
    check_weights(weights, children);
    n.kind_ = Kind::wand;
    n.weights_ = std::move(weights);
    n.children_ = std::move(children);
    return n;
}

QueryNode QueryNode::wsum(std::vector<double> weights, std::vector<QueryNode> children)
{
    QueryNode n;
    check_weights(weights, children);
    n.kind_ = Kind::wsum;
    n.weights_ = std::move(weights);
    n.children_ = std::move(children);
    return n;
}

QueryNode QueryNode::max_of(std::vector<QueryNode> children)
{
    QueryNode n;
    n.kind_ = Kind::max;
    n.children_ = std::move(children);
    return n;
}

std::size_t QueryNode::leaf_count() const
{
    if (is_leaf()) {
        return 1;
    }
    std::size_t n = 0;
    for (const auto& c : children_) {
        n += c.leaf_count();
    }
    return n;
}

}  // namespace tablesearch
