#include "tablesearch/evaluation/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "tablesearch/error.hpp"
#include "tablesearch/queryintel/text_util.hpp"

namespace tablesearch {

namespace {

int grade_of(const std::map<std::string, int>& grades, const std::string& table_id)
{
    auto it = grades.find(table_id);
    return it == grades.end() ? 0 : it->second;
}

double gain(int grade) { return std::exp2(grade) - 1.0; }

const std::vector<RankedTable>& ranking_of(const Run& run, const std::string& qid)
{
    static const std::vector<RankedTable> kEmpty;
    auto it = run.find(qid);
    return it == run.end() ? kEmpty : it->second;
}

}  // namespace

std::optional<double> average_precision(const std::vector<RankedTable>& ranking,
                                        const std::map<std::string, int>& grades, std::size_t depth)
{
    auto relevant = static_cast<std::size_t>(
        std::count_if(grades.begin(), grades.end(), [](const auto& kv) { return kv.second >= 1; }));
    if (relevant == 0) {
        return std::nullopt;
    }
    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < ranking.size() && i < depth; ++i) {
        if (grade_of(grades, ranking[i].table_id) >= 1) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(std::min(relevant, depth));
}

double ndcg(const std::vector<RankedTable>& ranking, const std::map<std::string, int>& grades, std::size_t depth)
{
    std::vector<int> ideal;
    for (const auto& [_, g] : grades) {
        ideal.push_back(g);
    }
    std::sort(ideal.begin(), ideal.end(), std::greater<>());
    double idcg = 0.0;
    for (std::size_t i = 0; i < ideal.size() && i < depth; ++i) {
        idcg += gain(ideal[i]) / std::log2(static_cast<double>(i + 2));
    }
    if (idcg == 0.0) {
        return 0.0;
    }
    double dcg = 0.0;
    for (std::size_t i = 0; i < ranking.size() && i < depth; ++i) {
        dcg += gain(grade_of(grades, ranking[i].table_id)) / std::log2(static_cast<double>(i + 2));
    }
    return dcg / idcg;
}

double err(const std::vector<RankedTable>& ranking, const std::map<std::string, int>& grades, std::size_t depth)
{
    const double max_gain = std::exp2(Judgments::kMaxGrade);
    double not_stopped = 1.0;
    double value = 0.0;
    for (std::size_t i = 0; i < ranking.size() && i < depth; ++i) {
        double r = gain(grade_of(grades, ranking[i].table_id)) / max_gain;
        value += not_stopped * r / static_cast<double>(i + 1);
        not_stopped *= 1.0 - r;
    }
    return value;
}

EvaluationReport evaluate_run(const Run& run, const Judgments& judgments)
{
    EvaluationReport report;
    for (const auto& qid : judgments.query_ids()) {
        const auto& grades = judgments.of(qid);
        const auto& ranking = ranking_of(run, qid);
        auto ap = average_precision(ranking, grades);
        if (!ap) {
            continue;
        }
        report.per_query[qid] = {*ap, ndcg(ranking, grades), err(ranking, grades)};
    }
    if (!report.per_query.empty()) {
        for (const auto& [_, m] : report.per_query) {
            report.map += m.ap;
            report.ndcg += m.ndcg;
            report.err += m.err;
        }
        auto n = static_cast<double>(report.per_query.size());
        report.map /= n;
        report.ndcg /= n;
        report.err /= n;
    }
    return report;
}

std::string_view metric_name(Metric metric)
{
    switch (metric) {
    case Metric::map: return "map";
    case Metric::ndcg: return "ndcg";
    case Metric::err: return "err";
    }
    return "map";
}

std::optional<Metric> metric_from_name(std::string_view name)
{
    for (auto m : {Metric::map, Metric::ndcg, Metric::err}) {
        if (metric_name(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

double metric_value(const QueryMetrics& m, Metric metric)
{
    switch (metric) {
    case Metric::map: return m.ap;
    case Metric::ndcg: return m.ndcg;
    case Metric::err: return m.err;
    }
    return m.ap;
}

WinTieLoss win_tie_loss(const Run& a, const Run& b, const Judgments& judgments)
{
    WinTieLoss out;
    for (const auto& qid : judgments.query_ids()) {
        const auto& grades = judgments.of(qid);
        auto ap_a = average_precision(ranking_of(a, qid), grades);
        auto ap_b = average_precision(ranking_of(b, qid), grades);
        if (!ap_a || !ap_b) {
            continue;
        }
        auto ra = std::llround(*ap_a * 1e4);
        auto rb = std::llround(*ap_b * 1e4);
        if (ra > rb) {
            ++out.wins;
        } else if (ra < rb) {
            ++out.losses;
        } else {
            ++out.ties;
        }
    }
    return out;
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("paired t-test needs samples of equal length");
    }
    if (a.size() < 2) {
        throw std::invalid_argument("paired t-test needs at least two pairs");
    }
    const auto n = static_cast<double>(a.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean += (a[i] - b[i]) / n;
    }
    double ss = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i] - mean;
        ss += d * d;
    }
    TTestResult result;
    result.degrees_of_freedom = a.size() - 1;
    double sd = std::sqrt(ss / (n - 1.0));
    if (sd == 0.0) {
        result.t = mean == 0.0 ? 0.0 : std::copysign(INFINITY, mean);
        result.p_value = mean == 0.0 ? 1.0 : 0.0;
        return result;
    }
    result.t = mean / (sd / std::sqrt(n));
    boost::math::students_t dist(static_cast<double>(result.degrees_of_freedom));
    result.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(result.t)));
    return result;
}

std::map<std::string, int> assign_folds(std::vector<std::string> query_ids, int k, std::uint64_t seed)
{
    if (k < 1) {
        throw std::invalid_argument("fold count must be positive");
    }
    std::sort(query_ids.begin(), query_ids.end());
    query_ids.erase(std::unique(query_ids.begin(), query_ids.end()), query_ids.end());
    // Explicit Fisher-Yates over raw engine output: std::shuffle and the
    // distributions are not specified bit-for-bit across standard libraries.
    std::mt19937_64 rng(seed);
    for (std::size_t i = query_ids.size(); i > 1; --i) {
        auto j = static_cast<std::size_t>(rng() % i);
        std::swap(query_ids[i - 1], query_ids[j]);
    }
    std::map<std::string, int> folds;
    for (std::size_t i = 0; i < query_ids.size(); ++i) {
        folds[query_ids[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
    }
    return folds;
}

void write_folds(const std::filesystem::path& path, const std::map<std::string, int>& folds)
{
    std::ofstream out(path);
    if (!out) {
        throw FileError("cannot write folds " + path.string());
    }
    for (const auto& [qid, fold] : folds) {
        out << qid << '\t' << fold << '\n';
    }
}

std::map<std::string, int> read_folds(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open folds " + path.string());
    }
    std::map<std::string, int> folds;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) {
            continue;
        }
        auto cols = split_tsv(line);
        if (cols.size() != 2) {
            throw FormatError("folds line " + std::to_string(line_no) + ": expected 'qid<TAB>fold'");
        }
        double fold = parse_double(cols[1], "folds line " + std::to_string(line_no));
        if (fold < 0 || fold != static_cast<int>(fold)) {
            throw FormatError("folds line " + std::to_string(line_no) + ": fold must be a non-negative integer");
        }
        folds[std::string(trim(cols[0]))] = static_cast<int>(fold);
    }
    return folds;
}

CrossValidationResult cross_validate(std::span<const std::map<std::string, double>> scores,
                                     const std::map<std::string, int>& folds, int k)
{
    if (scores.empty()) {
        throw std::invalid_argument("parameter grid is empty");
    }
    auto score = [&](std::size_t g, const std::string& qid) {
        auto it = scores[g].find(qid);
        return it == scores[g].end() ? 0.0 : it->second;
    };
    CrossValidationResult result;
    for (int fold = 0; fold < k; ++fold) {
        std::size_t best = 0;
        double best_mean = -INFINITY;
        for (std::size_t g = 0; g < scores.size(); ++g) {
            double sum = 0.0;
            std::size_t n = 0;
            for (const auto& [qid, f] : folds) {
                if (f != fold) {
                    sum += score(g, qid);
                    ++n;
                }
            }
            double mean = n == 0 ? 0.0 : sum / static_cast<double>(n);
            if (mean > best_mean) {
                best_mean = mean;
                best = g;
            }
        }
        result.chosen.push_back(best);
        for (const auto& [qid, f] : folds) {
            if (f == fold) {
                result.held_out[qid] = score(best, qid);
            }
        }
    }
    for (const auto& [_, v] : result.held_out) {
        result.pooled += v;
    }
    if (!result.held_out.empty()) {
        result.pooled /= static_cast<double>(result.held_out.size());
    }
    return result;
}

}  // namespace tablesearch
