#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tablesearch/evaluation/trec.hpp"

namespace tablesearch {

inline constexpr std::size_t kMapDepth = 100;
inline constexpr std::size_t kNdcgDepth = 20;
inline constexpr std::size_t kErrDepth = 20;

/// AP with relevance at grade >= 1, normalized by min(R, depth). nullopt
/// when the query has no relevant table.
std::optional<double> average_precision(const std::vector<RankedTable>& ranking,
                                        const std::map<std::string, int>& grades, std::size_t depth = kMapDepth);

/// Gains 2^g - 1, discount 1 / log2(rank + 1). 0 when the ideal DCG is 0.
double ndcg(const std::vector<RankedTable>& ranking, const std::map<std::string, int>& grades,
            std::size_t depth = kNdcgDepth);

/// Cascade ERR with R(g) = (2^g - 1) / 2^3.
double err(const std::vector<RankedTable>& ranking, const std::map<std::string, int>& grades,
           std::size_t depth = kErrDepth);

struct QueryMetrics {
    double ap = 0.0;
    double ndcg = 0.0;
    double err = 0.0;

    bool operator==(const QueryMetrics&) const = default;
};

struct EvaluationReport {
    std::map<std::string, QueryMetrics> per_query;
    double map = 0.0;
    double ndcg = 0.0;
    double err = 0.0;

    [[nodiscard]] std::size_t query_count() const { return per_query.size(); }
};

/// Evaluates every judged query with at least one relevant table; queries
/// missing from the run score 0.
EvaluationReport evaluate_run(const Run& run, const Judgments& judgments);

enum class Metric { map, ndcg, err };

std::string_view metric_name(Metric metric);
std::optional<Metric> metric_from_name(std::string_view name);
double metric_value(const QueryMetrics& m, Metric metric);

struct WinTieLoss {
    std::size_t wins = 0;
    std::size_t ties = 0;
    std::size_t losses = 0;

    bool operator==(const WinTieLoss&) const = default;
};

/// Per evaluated query, A's AP against B's, both rounded to 4 decimals.
WinTieLoss win_tie_loss(const Run& a, const Run& b, const Judgments& judgments);

struct TTestResult {
    double t = 0.0;
    double p_value = 1.0;  ///< two-sided
    std::size_t degrees_of_freedom = 0;
};

/// Paired two-sided t-test over matched samples. Throws std::invalid_argument
/// for unequal lengths or fewer than two pairs.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

/// query id -> fold in [0, k): a seeded shuffle of the sorted ids, dealt
/// round robin. Identical for identical ids, k and seed.
std::map<std::string, int> assign_folds(std::vector<std::string> query_ids, int k, std::uint64_t seed);
void write_folds(const std::filesystem::path& path, const std::map<std::string, int>& folds);
std::map<std::string, int> read_folds(const std::filesystem::path& path);

struct CrossValidationResult {
    std::vector<std::size_t> chosen;          ///< grid index per fold
    std::map<std::string, double> held_out;   ///< per-query metric on its test fold
    double pooled = 0.0;                      ///< mean of held_out
};

/// scores[g][q]: per-query metric of grid point g. For every fold the grid
/// point with the best mean over the other folds' queries wins (ties: the
/// earlier point) and is scored on the fold's own queries. Queries missing
/// from a score map count 0. Throws std::invalid_argument on an empty grid.
CrossValidationResult cross_validate(std::span<const std::map<std::string, double>> scores,
                                     const std::map<std::string, int>& folds, int k);

}  // namespace tablesearch
