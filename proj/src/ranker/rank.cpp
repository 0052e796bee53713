#include "tablesearch/ranker/rank.hpp"

#include <algorithm>
#include <cmath>

#include "tablesearch/ranker/scoring.hpp"

namespace tablesearch {

namespace {

void collect_terms(const QueryNode& node, std::vector<std::string>& out)
{
    if (node.is_leaf()) {
        out.insert(out.end(), node.terms().begin(), node.terms().end());
        return;
    }
    for (const auto& c : node.children()) {
        collect_terms(c, out);
    }
}

}  // namespace

std::vector<TableNo> candidate_tables(const Index& index, const QueryNode& node)
{
    std::vector<std::string> terms;
    collect_terms(node, terms);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

    std::vector<TableNo> tables;
    for (const auto& term : terms) {
        if (auto id = index.term_id(term)) {
            for (const auto& p : index.postings(*id)) {
                if (tables.empty() || tables.back() != p.table) {
                    tables.push_back(p.table);
                }
            }
        }
    }
    std::sort(tables.begin(), tables.end());
    tables.erase(std::unique(tables.begin(), tables.end()), tables.end());
    return tables;
}

void sort_ranking(std::vector<RankedTable>& ranking, std::size_t k)
{
    std::sort(ranking.begin(), ranking.end(), [](const RankedTable& a, const RankedTable& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.table_id < b.table_id;
    });
    if (ranking.size() > k) {
        ranking.resize(k);
    }
}

std::vector<RankedTable> rank(const Index& index, const QueryNode& node, const ModelParams& params, std::size_t k)
{
    std::vector<RankedTable> ranking;
    if (k == 0) {
        return ranking;
    }
    QueryEvaluator evaluator(index, params);
    for (auto t : candidate_tables(index, node)) {
        double score = evaluator.evaluate(node, t);
        if (params.prior_enabled) {
            score += std::log(table_prior(index.table(t)));
        }
        ranking.push_back({index.table(t).table_id, score});
    }
    sort_ranking(ranking, k);
    return ranking;
}

}  // namespace tablesearch
