#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bm25_oracle.hpp"
#include "fixtures.hpp"
#include "tablesearch/baselines/baselines.hpp"
#include "tablesearch/ranker/builders.hpp"
#include "tablesearch/ranker/rank.hpp"

using namespace tablesearch;

namespace {

struct Corpus {
    std::vector<TableRecord> records;
    Index index;
    oracle::CountOracle counts;
};

const Corpus& corpus()
{
    static const Corpus c = [] {
        auto records = fixtures::bundled_corpus();
        auto index = Index::build(records);
        oracle::CountOracle counts(records);
        return Corpus{std::move(records), std::move(index), std::move(counts)};
    }();
    return c;
}

const std::vector<std::vector<std::string>>& queries()
{
    static const std::vector<std::vector<std::string>> q = {
        {"meson", "mass"}, {"x-ray", "emission", "spectra"}, {"gravitational", "force", "gravity"},
        {"thermal", "conductivity"}, {"mass", "mass", "radius"},
    };
    return q;
}

std::array<double, kFieldCount> filled(double v)
{
    std::array<double, kFieldCount> a{};
    a.fill(v);
    return a;
}

}  // namespace

TEST_CASE("bm25: idf")
{
    CHECK(bm25_idf(10, 0) == doctest::Approx(std::log(10.5 / 0.5 + 1.0)));
    CHECK(bm25_idf(10, 10) == doctest::Approx(std::log(0.5 / 10.5 + 1.0)));
    CHECK(bm25_idf(10, 10) > 0.0);
}

TEST_CASE("bm25: absent terms contribute nothing")
{
    const auto& c = corpus();
    std::vector<std::string> q = {"quokka"};
    for (TableNo t = 0; t < c.index.table_count(); ++t) {
        CHECK(bm25_score(q, t, c.index, {}) == 0.0);
        CHECK(bm25f_score(q, t, c.index, {}) == 0.0);
    }
    CHECK(rank_baseline(BaselineKind::bm25, q, c.index, {}, default_field_weights()).empty());
}

TEST_CASE("bm25: k1 = 0 sums the idf of matching terms")
{
    const auto& c = corpus();
    BM25Params p;
    p.k1 = 0.0;
    std::vector<std::string> q = {"meson", "mass"};
    auto t = *c.index.find_table("mesons-t1");
    double expected = 0.0;
    for (const auto& term : q) {
        auto id = c.index.term_id(term);
        REQUIRE(id);
        if (c.index.count(*id, t, FieldScope::whole_table()) > 0) {
            expected += bm25_idf(c.index.table_count(), c.index.stats().corpus[*id].df);
        }
    }
    CHECK(bm25_score(q, t, c.index, p) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("bm25: matches the record-count oracle")
{
    const auto& c = corpus();
    for (double b : {0.0, 0.4, 0.75, 1.0}) {
        BM25Params p;
        p.b = b;
        for (const auto& q : queries()) {
            for (const auto& r : c.records) {
                auto t = *c.index.find_table(r.table_id);
                CAPTURE(r.table_id);
                CHECK(std::abs(bm25_score(q, t, c.index, p) - c.counts.bm25(q, r.table_id, p.k1, b)) < 1e-9);
            }
        }
    }
}

TEST_CASE("bm25f: matches the record-count oracle")
{
    const auto& c = corpus();
    BM25Params p;
    p.field_weight = {0.5, 0.2, 3.0, 1.0, 0.3, 1.5, 1.5, 0.1};
    p.field_b = {0.0, 0.25, 0.75, 1.0, 0.5, 0.75, 0.75, 0.3};
    for (const auto& q : queries()) {
        for (const auto& r : c.records) {
            auto t = *c.index.find_table(r.table_id);
            CAPTURE(r.table_id);
            CHECK(std::abs(bm25f_score(q, t, c.index, p) -
                           c.counts.bm25f(q, r.table_id, p.k1, p.field_weight, p.field_b)) < 1e-9);
        }
    }
}

TEST_CASE("bm25f: unit weights without length normalization equal bm25")
{
    const auto& c = corpus();
    BM25Params p;
    p.b = 0.0;
    p.field_b = filled(0.0);
    for (const auto& q : queries()) {
        for (TableNo t = 0; t < c.index.table_count(); ++t) {
            CHECK(std::abs(bm25f_score(q, t, c.index, p) - bm25_score(q, t, c.index, p)) < 1e-12);
        }
    }
}

TEST_CASE("bm25f: caption-only weights ignore other fields")
{
    std::vector<TableRecord> records = {
        fixtures::make_table("cap", {{FieldType::caption, {"meson mass"}}}),
        fixtures::make_table("cells", {{FieldType::cell_value, {"meson", "mass"}}}),
    };
    auto index = Index::build(records);
    BM25Params p;
    p.field_weight = {0, 0, 1, 0, 0, 0, 0, 0};
    std::vector<std::string> q = {"meson", "mass"};
    CHECK(bm25f_score(q, *index.find_table("cap"), index, p) > 0.0);
    CHECK(bm25f_score(q, *index.find_table("cells"), index, p) == 0.0);
}

TEST_CASE("bm25: parameter validation")
{
    BM25Params p;
    CHECK_NOTHROW(p.validate());
    p.k1 = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.b = 1.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.field_weight[3] = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("tablerank: cosine bounds")
{
    std::vector<TableRecord> records = {
        fixtures::make_table("same", {{FieldType::caption, {"meson mass"}}}),
        fixtures::make_table("other", {{FieldType::caption, {"galaxy cluster"}}}),
    };
    auto index = Index::build(records);
    auto weights = union_field_weights();
    std::vector<std::string> q = {"meson", "mass"};
    CHECK(tablerank_score(q, *index.find_table("same"), index, weights) == doctest::Approx(1.0));
    CHECK(tablerank_score(q, *index.find_table("other"), index, weights) == 0.0);
}

TEST_CASE("tablerank: matches the record-count oracle")
{
    const auto& c = corpus();
    auto weights = default_field_weights();
    std::array<double, kFieldCount> by_field{};
    for (const auto& fw : weights) {
        by_field[field_index(fw.scope.field())] = fw.weight;
    }
    for (const auto& q : queries()) {
        for (const auto& r : c.records) {
            auto t = *c.index.find_table(r.table_id);
            CHECK(std::abs(tablerank_score(q, t, c.index, weights) - c.counts.tablerank(q, r.table_id, by_field)) <
                  1e-9);
        }
    }
}

TEST_CASE("tablerank: repeated generic term beats the specific table")
{
    auto records = fixtures::meson_tables();
    auto index = Index::build(records);
    std::vector<std::string> q = {"meson", "mass"};
    auto tr = rank_baseline(BaselineKind::tablerank, q, index, {}, union_field_weights());
    REQUIRE_FALSE(tr.empty());
    CHECK(tr.front().table_id == "mass-only");

    ModelParams params;
    AnalyzedQuery analyzed;
    analyzed.tokens = q;
    auto lm = rank(index, build_full_query(analyzed, params), params);
    REQUIRE_FALSE(lm.empty());
    CHECK(lm.front().table_id == "meson-masses");
}

TEST_CASE("baselines: permutation of the corpus does not change scores")
{
    auto records = fixtures::bundled_corpus();
    auto index = Index::build(records);
    std::mt19937_64 rng(5);
    std::shuffle(records.begin(), records.end(), rng);
    auto shuffled = Index::build(records);
    std::vector<std::string> q = {"x-ray", "emission", "spectra"};
    for (auto kind : {BaselineKind::bm25, BaselineKind::bm25f, BaselineKind::tablerank}) {
        auto a = rank_baseline(kind, q, index, {}, default_field_weights());
        auto b = rank_baseline(kind, q, shuffled, {}, default_field_weights());
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].table_id == b[i].table_id);
            CHECK(a[i].score == doctest::Approx(b[i].score).epsilon(1e-12));
        }
    }
}

TEST_CASE("indri: bag of words equals the whole-table terms ranker")
{
    const auto& c = corpus();
    ModelParams params;
    params.prior_enabled = false;
    params.field_weights = union_field_weights();
    for (const auto& q : queries()) {
        auto bow = rank(c.index, indri_bow_query(q), params);
        auto terms = rank(c.index, build_query_terms(q, params.field_weights), params);
        REQUIRE(bow.size() == terms.size());
        for (std::size_t i = 0; i < bow.size(); ++i) {
            CHECK(bow[i].table_id == terms[i].table_id);
            CHECK(std::abs(bow[i].score - terms[i].score) < 1e-12);
        }
    }
}

TEST_CASE("indri: sdm shape")
{
    std::vector<std::string> one = {"meson"};
    CHECK(indri_sdm_query(one) == indri_bow_query(one));
    std::vector<std::string> two = {"meson", "mass"};
    auto sdm = indri_sdm_query(two);
    CHECK(sdm.kind() == QueryNode::Kind::wand);
    CHECK(sdm.children().size() == 3);
}

TEST_CASE("baselines: depth")
{
    const auto& c = corpus();
    std::vector<std::string> q = {"mass"};
    CHECK(rank_baseline(BaselineKind::bm25, q, c.index, {}, default_field_weights(), 0).empty());
    CHECK(rank_baseline(BaselineKind::bm25, q, c.index, {}, default_field_weights(), 2).size() == 2);
}
