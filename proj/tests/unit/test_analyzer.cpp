#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "tablesearch/cli/config.hpp"
#include "tablesearch/cli/pipeline.hpp"
#include "tablesearch/queryintel/analyzer.hpp"

using namespace tablesearch;

namespace {

struct Bundle {
    std::vector<TableRecord> records;
    Index index;
    Config config;
};

const Bundle& bundle()
{
    static const Bundle b = [] {
        auto records = fixtures::bundled_corpus();
        auto index = Index::build(records);
        auto config = load_config(fixtures::data_dir() / "config.json");
        return Bundle{std::move(records), std::move(index), std::move(config)};
    }();
    return b;
}

const QueryAnalyzer& analyzer()
{
    static const QueryAnalyzer a(load_analyzer_resources(bundle().config, &bundle().index));
    return a;
}

double weight_sum(const std::vector<Concept>& concepts)
{
    return std::accumulate(concepts.begin(), concepts.end(), 0.0,
                           [](double s, const Concept& c) { return s + c.weight; });
}

const QuantityTerm* find_quantity(const AnalyzedQuery& q, const std::string& type)
{
    auto it = std::find_if(q.quantities.begin(), q.quantities.end(),
                           [&](const QuantityTerm& t) { return t.type == type; });
    return it == q.quantities.end() ? nullptr : &*it;
}

}  // namespace

TEST_CASE("analyzer: entity concepts and quantities of the example query")
{
    auto q = analyzer().analyze("gravitational forces in newtonian gravity versus bimetric gravity",
                                ConceptMode::entity);
    CHECK(q.tokens ==
          std::vector<std::string>{"gravitational", "force", "newtonian", "gravity", "versus", "bimetric", "gravity"});
    REQUIRE(q.concepts.size() == 3);
    CHECK(q.concepts[0].text == "gravitational force");
    CHECK(q.concepts[0].raw_score == doctest::Approx(0.92));
    CHECK(q.concepts[0].weight == doctest::Approx(0.92 / (0.92 + 0.88 + 0.35)));
    CHECK(q.concepts[0].quantity == "Force");
    CHECK(q.concepts[1].text == "newtonian gravity");
    CHECK(q.concepts[1].quantity == "Acceleration");
    CHECK_FALSE(q.concepts[2].quantity.has_value());
    CHECK(weight_sum(q.concepts) == doctest::Approx(1.0));

    REQUIRE(q.quantities.size() == 2);
    for (const auto& t : q.quantities) {
        CHECK(t.weight == doctest::Approx(0.5));
    }
    const auto* force = find_quantity(q, "Force");
    REQUIRE(force != nullptr);
    CHECK(std::find(force->units.begin(), force->units.end(), "n") != force->units.end());
}

TEST_CASE("analyzer: energy units for x-ray emission")
{
    auto q = analyzer().analyze("x-ray emission spectra", ConceptMode::entity);
    REQUIRE(q.quantities.size() == 1);
    CHECK(q.quantities[0].type == "Energy");
    CHECK(q.quantities[0].weight == doctest::Approx(1.0));
    for (const char* unit : {"ev", "kev", "j"}) {
        CAPTURE(unit);
        CHECK(std::find(q.quantities[0].units.begin(), q.quantities[0].units.end(), unit) !=
              q.quantities[0].units.end());
    }
}

TEST_CASE("analyzer: noun-phrase concepts")
{
    auto q = analyzer().analyze("gravitational forces in newtonian gravity versus bimetric gravity",
                                ConceptMode::noun_phrase);
    REQUIRE(q.concepts.size() == 3);
    for (const auto& c : q.concepts) {
        CHECK(c.source == ConceptSource::noun_phrase);
        CHECK(c.raw_score >= 0.0);
    }
    CHECK(q.concepts[2].tokens == std::vector<std::string>{"bimetric", "gravity"});
    CHECK(weight_sum(q.concepts) == doctest::Approx(1.0));
    CHECK(find_quantity(q, "Force") != nullptr);
}

TEST_CASE("analyzer: dimensionless concepts contribute no quantity")
{
    auto q = analyzer().analyze("earth-like planet", ConceptMode::entity);
    REQUIRE(q.concepts.size() == 1);
    CHECK(q.concepts[0].text == "terrestrial planet");
    CHECK(q.quantities.empty());
}

TEST_CASE("analyzer: query without known entities")
{
    auto q = analyzer().analyze("quokka habitats", ConceptMode::entity);
    CHECK(q.concepts.empty());
    CHECK(q.quantities.empty());
    CHECK(q.tokens == std::vector<std::string>{"quokka", "habitat"});
}

TEST_CASE("analyzer: missing resources switch steps off")
{
    QueryAnalyzer bare(AnalyzerResources{});
    auto q = bare.analyze("x-ray emission spectra", ConceptMode::entity);
    CHECK(q.concepts.empty());
    CHECK(q.quantities.empty());
    CHECK(q.tokens.size() == 3);
    CHECK_FALSE(bare.classify(std::vector<std::string>{"temperature"}).has_value());
}

TEST_CASE("analyzer: concept mode names")
{
    for (auto mode : {ConceptMode::entity, ConceptMode::noun_phrase}) {
        CHECK(concept_mode_from_name(concept_mode_name(mode)) == mode);
    }
    CHECK_FALSE(concept_mode_from_name("tagme").has_value());
}
