#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "tablesearch/error.hpp"
#include "tablesearch/index/index.hpp"
#include "tablesearch/index/tokenizer.hpp"
#include "tablesearch/index/window.hpp"

using namespace tablesearch;

TEST_CASE("tokenizer: golden cases")
{
    Tokenizer tok;
    CHECK(tok.terms("Newtonian gravity") == std::vector<std::string>{"newtonian", "gravity"});
    CHECK(tok.terms("gravitational forces") == std::vector<std::string>{"gravitational", "force"});
    CHECK(tok.terms("the of in").empty());
    CHECK(tok.terms("keV") == std::vector<std::string>{"kev"});
    CHECK(tok.terms("Emission spectra of galaxies") == std::vector<std::string>{"emission", "spectra", "galaxy"});
    CHECK(light_stem("status") == "status");
    CHECK(light_stem("glass") == "glass");
    CHECK(light_stem("analysis") == "analysis");
}

TEST_CASE("tokenizer: positions skip stopwords")
{
    Tokenizer tok;
    auto tokens = tok.tokenize("gravity of the newtonian model");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0].position == 0);
    CHECK(tokens[1].stem == "newtonian");
    CHECK(tokens[1].position == 1);
    CHECK(tokens[2].position == 2);
}

TEST_CASE("tokenizer: unit symbols bypass the stemmer")
{
    const std::vector<std::string> symbols = {"keV", "MeV", "GeV", "TeV", "m/s^2", "km/s", "nHz", "H_2O", "cm^2",
                                              "g/cm^3", "erg/s", "S/m", "kHz", "GHz", "mA", "kPa", "MPa", "Mpc",
                                              "mT", "MeV/c^2"};
    REQUIRE(symbols.size() == 20);
    Tokenizer tok;
    for (const auto& s : symbols) {
        CAPTURE(s);
        std::string lower;
        for (char c : s) {
            lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
        CHECK(tok.terms(s) == std::vector<std::string>{lower});
    }
}

TEST_CASE("index: shared term document frequency")
{
    std::vector<TableRecord> records = {
        fixtures::make_table("a", {{FieldType::caption, {"meson mass"}}}),
        fixtures::make_table("b", {{FieldType::caption, {"halo mass"}}, {FieldType::footnote, {"mass"}}}),
    };
    auto index = Index::build(records);
    auto mass = index.term_id("mass");
    REQUIRE(mass);
    CHECK(index.stats().term(*mass, FieldType::caption).df == 2);
    CHECK(index.stats().term(*mass, FieldType::caption).ctf == 2);
    CHECK(index.stats().term(*mass, FieldType::footnote).df == 1);
    CHECK(index.stats().term(*mass, FieldScope::whole_table()).ctf == 3);
    CHECK(index.stats().term(*mass, FieldScope::whole_table()).df == 2);
    CHECK_FALSE(index.term_id("unseen").has_value());
}

TEST_CASE("index: empty record stream")
{
    auto index = Index::build(std::vector<TableRecord>{});
    CHECK(index.table_count() == 0);
    CHECK(index.vocabulary_size() == 0);
    CHECK(index.stats().total_tokens == 0);
    CHECK_FALSE(index.term_id("anything"));
}

TEST_CASE("index: duplicate table ids")
{
    std::vector<TableRecord> records = {fixtures::make_table("a", {}), fixtures::make_table("a", {})};
    CHECK_THROWS_AS((void)Index::build(records), DuplicateTableError);
}

TEST_CASE("index: statistics match a recount from raw text")
{
    auto corpus = fixtures::bundled_corpus();
    std::vector<TableRecord> records(corpus.begin(), corpus.begin() + 5);
    auto index = Index::build(records);
    Tokenizer tok;

    std::map<std::pair<std::string, std::size_t>, std::uint64_t> ctf;
    std::map<std::pair<std::string, std::size_t>, std::set<std::string>> tables_with;
    std::array<std::uint64_t, kFieldCount> field_tokens{};
    for (const auto& r : records) {
        auto no = index.find_table(r.table_id);
        REQUIRE(no);
        for (auto f : kAllFields) {
            std::uint64_t length = 0;
            for (const auto& unit : r.units(f)) {
                for (const auto& term : tok.terms(unit)) {
                    ++ctf[{term, field_index(f)}];
                    tables_with[{term, field_index(f)}].insert(r.table_id);
                    ++length;
                }
            }
            CHECK(index.field_length(*no, f) == length);
            field_tokens[field_index(f)] += length;
        }
    }
    for (const auto& [key, count] : ctf) {
        auto id = index.term_id(key.first);
        REQUIRE(id);
        auto stats = index.stats().term(*id, static_cast<FieldType>(key.second));
        CHECK(stats.ctf == count);
        CHECK(stats.df == tables_with[key].size());
    }
    std::uint64_t total = 0;
    for (auto f : kAllFields) {
        CHECK(index.stats().length(f) == field_tokens[field_index(f)]);
        total += field_tokens[field_index(f)];
    }
    CHECK(index.stats().total_tokens == total);

    // corpus ctf is the sum over field types
    for (TermId id = 0; id < index.vocabulary_size(); ++id) {
        std::uint64_t sum = 0;
        for (auto f : kAllFields) {
            sum += index.stats().term(id, f).ctf;
        }
        CHECK(index.stats().term(id, FieldScope::whole_table()).ctf == sum);
    }
}

TEST_CASE("index: save and load")
{
    auto records = fixtures::bundled_corpus();
    auto index = Index::build(records);
    fixtures::TempDir dir("ts-index");
    index.save(dir.path() / "idx");
    auto loaded = Index::load(dir.path() / "idx");
    CHECK(loaded.same_content(index));
    CHECK_THROWS_AS((void)Index::load(dir.path() / "missing"), FileError);
}

TEST_CASE("window: adjacency and order")
{
    std::vector<TableRecord> records = {
        fixtures::make_table("a", {{FieldType::caption, {"newtonian gravity constant"}}}),
        fixtures::make_table("b", {{FieldType::caption, {"gravity of the newtonian model"}}}),
    };
    auto index = Index::build(records);
    std::vector<std::string> forward = {"newtonian", "gravity"};
    std::vector<std::string> backward = {"gravity", "newtonian"};
    CHECK(window_count(index, 0, forward, FieldType::caption, WindowSpec::ordered()) == 1);
    CHECK(window_count(index, 0, backward, FieldType::caption, WindowSpec::ordered()) == 0);
    CHECK(window_count(index, 1, forward, FieldType::caption, WindowSpec::unordered(8)) == 1);
    CHECK(window_count(index, 1, forward, FieldType::caption, WindowSpec::ordered()) == 0);
    CHECK(window_count(index, 1, forward, FieldType::footnote, WindowSpec::unordered(8)) == 0);
    std::vector<std::string> unknown = {"newtonian", "zebra"};
    CHECK(window_count(index, 0, unknown, FieldScope::whole_table(), WindowSpec::unordered(8)) == 0);
}

TEST_CASE("window: windows never cross text units")
{
    std::vector<TableRecord> records = {
        fixtures::make_table("a", {{FieldType::row_header, {"x newtonian", "gravity y"}}}),
    };
    auto index = Index::build(records);
    std::vector<std::string> pair = {"newtonian", "gravity"};
    CHECK(window_count(index, 0, pair, FieldType::row_header, WindowSpec::ordered()) == 0);
    CHECK(window_count(index, 0, pair, FieldType::row_header, WindowSpec::unordered(8)) == 0);
}

TEST_CASE("window: per-unit counting against brute force")
{
    std::vector<std::vector<std::uint32_t>> pos = {{0, 4, 9}, {1, 5, 20}};
    CHECK(count_windows_in_unit(pos, WindowSpec::ordered()) == 2);
    // starts 0,1,4,5 qualify with width 8; 9 and 20 do not
    CHECK(count_windows_in_unit(pos, WindowSpec::unordered(8)) == 4);
    std::vector<std::vector<std::uint32_t>> single = {{2, 3, 7}};
    CHECK(count_windows_in_unit(single, WindowSpec::unordered(8)) == 3);
}

TEST_CASE("window: corpus windows match brute force")
{
    auto records = fixtures::bundled_corpus();
    auto index = Index::build(records);
    Tokenizer tok;
    std::size_t checked = 0;
    for (const auto& r : records) {
        auto no = *index.find_table(r.table_id);
        for (auto f : kAllFields) {
            std::vector<std::vector<std::string>> units;
            for (const auto& u : r.units(f)) {
                units.push_back(tok.terms(u));
            }
            std::set<std::vector<std::string>> pairs;
            for (const auto& u : units) {
                for (std::size_t i = 0; i + 1 < u.size(); ++i) {
                    pairs.insert({u[i], u[i + 1]});
                    if (i + 3 < u.size()) {
                        pairs.insert({u[i + 3], u[i]});
                    }
                }
            }
            for (const auto& p : pairs) {
                for (auto leaf : {oracle::Leaf::ordered, oracle::Leaf::unordered}) {
                    std::uint64_t expected = 0;
                    for (const auto& u : units) {
                        expected += oracle::brute_window_count(u, p, leaf, 8);
                    }
                    auto spec = leaf == oracle::Leaf::ordered ? WindowSpec::ordered() : WindowSpec::unordered(8);
                    CHECK(window_count(index, no, p, f, spec) == expected);
                    ++checked;
                }
            }
        }
    }
    CHECK(checked > 100);
}
