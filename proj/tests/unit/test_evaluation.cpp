#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "tablesearch/error.hpp"
#include "tablesearch/evaluation/metrics.hpp"
#include "tablesearch/evaluation/trec.hpp"

using namespace tablesearch;

namespace {

std::vector<RankedTable> ranked(std::initializer_list<const char*> ids)
{
    std::vector<RankedTable> out;
    double score = 0.0;
    for (const char* id : ids) {
        out.push_back({id, score});
        score -= 1.0;
    }
    return out;
}

}  // namespace

TEST_CASE("average precision")
{
    std::map<std::string, int> one = {{"a", 1}};
    CHECK(*average_precision(ranked({"a", "b"}), one) == doctest::Approx(1.0));
    CHECK(*average_precision(ranked({"b", "a"}), one) == doctest::Approx(0.5));
    std::map<std::string, int> three = {{"a", 2}, {"c", 1}, {"e", 3}, {"b", 0}};
    CHECK(*average_precision(ranked({"a", "b", "c", "d", "e"}), three) ==
          doctest::Approx((1.0 + 2.0 / 3.0 + 3.0 / 5.0) / 3.0));
    CHECK(*average_precision(ranked({"a", "b", "c", "d", "e"}), three) == doctest::Approx(0.7556).epsilon(1e-4));
    CHECK(*average_precision(ranked({"x"}), one) == 0.0);
    CHECK_FALSE(average_precision(ranked({"a"}), {{"a", 0}}).has_value());
    // normalization by min(R, depth)
    CHECK(*average_precision(ranked({"a", "c"}), three, 2) == doctest::Approx(1.0));
}

TEST_CASE("ndcg")
{
    std::map<std::string, int> judged = {{"a", 3}, {"b", 0}, {"c", 1}};
    CHECK(std::abs(ndcg(ranked({"a", "b", "c"}), judged) - 7.5 / (7.0 + 1.0 / std::log2(3.0))) < 1e-9);
    CHECK(ndcg(ranked({"a", "b", "c"}), judged) == doctest::Approx(0.98284).epsilon(1e-5));

    std::map<std::string, int> grades = {{"a", 3}, {"c", 1}, {"d", 2}};
    double dcg = 7.0 + 1.0 / 2.0;
    double ideal = 7.0 + 3.0 / std::log2(3.0) + 1.0 / 2.0;
    CHECK(ndcg(ranked({"a", "b", "c"}), grades) == doctest::Approx(dcg / ideal));
    CHECK(ndcg(ranked({"a", "d", "c"}), grades) == doctest::Approx(1.0));
    CHECK(ndcg(ranked({"a"}), {{"a", 0}}) == 0.0);
    CHECK(ndcg(ranked({"b", "a"}), grades, 1) == 0.0);
}

TEST_CASE("expected reciprocal rank")
{
    std::map<std::string, int> grades = {{"a", 3}, {"b", 1}};
    CHECK(err(ranked({"a"}), grades) == doctest::Approx(0.875));
    CHECK(err(ranked({"x", "a"}), grades) == doctest::Approx(0.4375));
    double rb = 1.0 / 8.0;
    double ra = 7.0 / 8.0;
    CHECK(err(ranked({"b", "a"}), grades) == doctest::Approx(rb + (1.0 - rb) * ra / 2.0));
    CHECK(err({}, grades) == 0.0);
}

TEST_CASE("evaluate run: missing and unjudged queries")
{
    Judgments j;
    j.set("q1", "a", 3);
    j.set("q2", "b", 1);
    j.set("q3", "c", 0);
    Run run;
    run["q1"] = ranked({"a"});
    auto report = evaluate_run(run, j);
    CHECK(report.query_count() == 2);
    CHECK(report.per_query.at("q2").ap == 0.0);
    CHECK(report.map == doctest::Approx(0.5));
    CHECK(report.err == doctest::Approx(0.875 / 2.0));
}

TEST_CASE("win / tie / loss")
{
    Judgments j;
    for (const char* q : {"q1", "q2", "q3"}) {
        j.set(q, "a", 1);
    }
    Run a;
    Run b;
    a["q1"] = ranked({"a"});
    b["q1"] = ranked({"x", "a"});
    a["q2"] = ranked({"a"});
    b["q2"] = ranked({"a"});
    b["q3"] = ranked({"a"});
    CHECK(win_tie_loss(a, b, j) == WinTieLoss{1, 1, 1});
}

TEST_CASE("paired t-test")
{
    std::vector<double> a = {1.0, 2.0, 4.0};
    std::vector<double> b = {0.0, 0.0, 0.0};
    auto r = paired_t_test(a, b);
    double mean = 7.0 / 3.0;
    double var = ((1 - mean) * (1 - mean) + (2 - mean) * (2 - mean) + (4 - mean) * (4 - mean)) / 2.0;
    double t = mean / std::sqrt(var / 3.0);
    CHECK(r.degrees_of_freedom == 2);
    CHECK(r.t == doctest::Approx(t));
    // closed-form two-sided p-value for two degrees of freedom
    CHECK(r.p_value == doctest::Approx(1.0 - t / std::sqrt(2.0 + t * t)));
    std::vector<double> one = {1.0};
    CHECK_THROWS_AS((void)paired_t_test(one, one), std::invalid_argument);
    std::vector<double> c = {1.0, 2.0};
    CHECK_THROWS_AS((void)paired_t_test(a, c), std::invalid_argument);
}

TEST_CASE("folds: deterministic and balanced")
{
    std::vector<std::string> ids;
    for (int i = 1; i <= 23; ++i) {
        ids.push_back("q" + std::to_string(i));
    }
    auto f1 = assign_folds(ids, 10, 42);
    auto reversed = ids;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(assign_folds(reversed, 10, 42) == f1);
    std::map<int, int> sizes;
    for (const auto& [q, f] : f1) {
        CHECK(f >= 0);
        CHECK(f < 10);
        ++sizes[f];
    }
    CHECK(sizes.size() == 10);
    for (const auto& [f, n] : sizes) {
        CHECK(n >= 2);
        CHECK(n <= 3);
    }
    CHECK(assign_folds(ids, 10, 43) != f1);

    fixtures::TempDir dir("folds");
    write_folds(dir.path() / "folds.tsv", f1);
    CHECK(read_folds(dir.path() / "folds.tsv") == f1);
    CHECK_THROWS_AS((void)read_folds(dir.path() / "missing.tsv"), FileError);
}

TEST_CASE("cross validation: single grid point")
{
    std::map<std::string, double> s = {{"q1", 0.2}, {"q2", 0.4}, {"q3", 0.9}};
    std::vector<std::map<std::string, double>> grid = {s};
    auto folds = assign_folds({"q1", "q2", "q3"}, 3, 1);
    auto cv = cross_validate(grid, folds, 3);
    CHECK(cv.pooled == doctest::Approx(0.5));
    CHECK(cv.chosen == std::vector<std::size_t>{0, 0, 0});
    std::vector<std::map<std::string, double>> empty;
    CHECK_THROWS_AS((void)cross_validate(empty, folds, 3), std::invalid_argument);
}

TEST_CASE("cross validation: leave one out picks from the other queries")
{
    std::vector<std::string> ids;
    for (int i = 0; i < 10; ++i) {
        ids.push_back("q" + std::to_string(i));
    }
    std::map<std::string, double> a;
    std::map<std::string, double> b;
    for (int i = 0; i < 10; ++i) {
        a[ids[i]] = 0.5;
        b[ids[i]] = i == 0 ? 1.0 : 0.45;
    }
    b[ids[1]] = 0.9;
    std::vector<std::map<std::string, double>> grid = {a, b};
    auto folds = assign_folds(ids, 10, 7);
    auto cv = cross_validate(grid, folds, 10);
    REQUIRE(cv.chosen.size() == 10);
    double expected = 0.0;
    for (int q = 0; q < 10; ++q) {
        double ma = 0.0;
        double mb = 0.0;
        for (int o = 0; o < 10; ++o) {
            if (o != q) {
                ma += a[ids[o]];
                mb += b[ids[o]];
            }
        }
        std::size_t pick = mb > ma ? 1 : 0;
        CHECK(cv.chosen[static_cast<std::size_t>(folds.at(ids[q]))] == pick);
        double held = pick == 1 ? b[ids[q]] : a[ids[q]];
        CHECK(cv.held_out.at(ids[q]) == doctest::Approx(held));
        expected += held / 10.0;
    }
    CHECK(cv.pooled == doctest::Approx(expected));
}

TEST_CASE("trec: qrels")
{
    std::istringstream in("q1 0 t1 3\nq1 0 t2 0\n\nq2 0 t3 1\n");
    auto j = read_qrels(in);
    CHECK(j.grade("q1", "t1") == 3);
    CHECK(j.grade("q1", "t9") == 0);
    CHECK(j.relevant_count("q1") == 1);
    CHECK(j.query_ids() == std::vector<std::string>{"q1", "q2"});
    std::stringstream out;
    write_qrels(out, j);
    CHECK(read_qrels(out) == j);
    std::istringstream bad("q1 0 t1 7\n");
    CHECK_THROWS_AS((void)read_qrels(bad), FormatError);
    std::istringstream short_line("q1 0 t1\n");
    CHECK_THROWS_AS((void)read_qrels(short_line), FormatError);
    CHECK_THROWS_AS((void)read_qrels_file("/nonexistent/qrels"), FileError);
}

TEST_CASE("trec: runs")
{
    std::istringstream in("q1 Q0 b 2 0.5 x\nq1 Q0 a 1 0.9 x\nq1 Q0 c 3 0.5 x\n");
    auto run = read_run(in);
    const auto& r = run.at("q1");
    REQUIRE(r.size() == 3);
    CHECK(r[0].table_id == "a");
    CHECK(r[1].table_id == "b");
    CHECK(r[2].table_id == "c");
    std::stringstream out;
    write_run(out, run, "tag");
    auto back = read_run(out);
    CHECK(back == run);
    std::istringstream dup("q1 Q0 a 1 0.9 x\nq1 Q0 a 2 0.8 x\n");
    CHECK_THROWS_AS((void)read_run(dup), FormatError);
    std::istringstream bad("q1 Q0 a one 0.9 x\n");
    CHECK_THROWS_AS((void)read_run(bad), FormatError);
}

TEST_CASE("trec: topics")
{
    std::istringstream in("<top>\n<num> Number: q7\n<title> meson mass\n<intent> lookup\n</top>\n"
                          "<top><num>q8<title>Title: x-ray luminosity</top>\n");
    auto topics = read_topics(in);
    REQUIRE(topics.size() == 2);
    CHECK(topics[0] == Topic{"q7", "meson mass", "lookup"});
    CHECK(topics[1].id == "q8");
    CHECK(topics[1].title == "x-ray luminosity");
    std::istringstream bad("<top><num> q1\n</top>\n");
    CHECK_THROWS_AS((void)read_topics(bad), FormatError);
    CHECK(read_topics_file(fixtures::data_dir() / "topics.txt").size() == 10);
}

TEST_CASE("metric names")
{
    for (auto m : {Metric::map, Metric::ndcg, Metric::err}) {
        CHECK(metric_from_name(metric_name(m)) == m);
    }
    QueryMetrics q{0.1, 0.2, 0.3};
    CHECK(metric_value(q, Metric::ndcg) == 0.2);
}
