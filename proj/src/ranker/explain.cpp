#include "tablesearch/ranker/explain.hpp"

#include <algorithm>
#include <cstdio>

namespace tablesearch {

namespace {

std::string scope_suffix(FieldScope scope)
{
    if (scope.is_whole()) {
        return {};
    }
    return ".(" + std::string(scope.name()) + ")";
}

std::string format_weight(double w)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", w);
    return buf;
}

std::string join(const std::vector<std::string>& terms)
{
    std::string out;
    for (const auto& t : terms) {
        if (!out.empty()) {
            out += ' ';
        }
        out += t;
    }
    return out;
}

/// #and of plain terms sharing one scope prints as "#and( a b ).(f)".
bool is_flat_and(const QueryNode& node)
{
    if (node.kind() != QueryNode::Kind::and_ || node.children().empty()) {
        return false;
    }
    const auto scope = node.children().front().scope();
    return std::all_of(node.children().begin(), node.children().end(), [&](const QueryNode& c) {
        return c.kind() == QueryNode::Kind::term && c.scope() == scope;
    });
}

std::string inline_form(const QueryNode& node)
{
    switch (node.kind()) {
    case QueryNode::Kind::term: return node.terms().front() + scope_suffix(node.scope());
    case QueryNode::Kind::ordered_window: return "#1( " + join(node.terms()) + " )" + scope_suffix(node.scope());
    case QueryNode::Kind::unordered_window:
        return "#uw" + std::to_string(node.width()) + "( " + join(node.terms()) + " )" + scope_suffix(node.scope());
    default: break;
    }
    std::vector<std::string> terms;
    for (const auto& c : node.children()) {
        terms.push_back(c.terms().front());
    }
    return "#and( " + join(terms) + " )" + scope_suffix(node.children().front().scope());
}

const char* op_name(QueryNode::Kind kind)
{
    switch (kind) {
    case QueryNode::Kind::and_: return "#and";
    case QueryNode::Kind::wand: return "#wand";
    case QueryNode::Kind::wsum: return "#wsum";
    case QueryNode::Kind::max: return "#max";
    default: return "#?";
    }
}

void print(const QueryNode& node, const std::string& prefix, std::size_t depth, std::string& out)
{
    std::string indent(depth * 2, ' ');
    if (node.is_leaf() || is_flat_and(node)) {
        out += indent + prefix + inline_form(node) + "\n";
        return;
    }
    out += indent + prefix + op_name(node.kind()) + "(\n";
    const auto& weights = node.weights();
    for (std::size_t i = 0; i < node.children().size(); ++i) {
        std::string child_prefix = weights.empty() ? std::string() : format_weight(weights[i]) + " ";
        print(node.children()[i], child_prefix, depth + 1, out);
    }
    out += indent + ")\n";
}

}  // namespace

std::string to_indri(const QueryNode& node)
{
    std::string out;
    print(node, "", 0, out);
    return out;
}

}  // namespace tablesearch
