#include "fixtures.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tablesearch/corpus/numeric.hpp"
#include "tablesearch/corpus/xml_reader.hpp"

namespace fixtures {

namespace tsn = tablesearch;

std::filesystem::path data_dir() { return TABLESEARCH_DATA_DIR; }
std::filesystem::path test_data_dir() { return TABLESEARCH_TEST_DATA_DIR; }

tsn::TableRecord make_table(std::string id, std::initializer_list<FieldUnits> fields)
{
    tsn::TableRecord r;
    r.table_id = std::move(id);
    r.doc_id = r.table_id;
    for (const auto& [field, units] : fields) {
        r.units(field) = units;
    }
    tsn::recount_cells(r, tsn::default_numeric_matcher());
    return r;
}

std::vector<tsn::TableRecord> bundled_corpus()
{
    std::vector<tsn::TableRecord> out;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(data_dir() / "corpus")) {
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        auto parsed = tsn::parse_table_xml_file(f);
        out.insert(out.end(), parsed.tables.begin(), parsed.tables.end());
    }
    return out;
}

std::vector<tsn::TableRecord> meson_tables()
{
    using F = tsn::FieldType;
    std::vector<tsn::TableRecord> out;
    out.push_back(make_table(
        "meson-masses",
        {{F::article_title, {"Lattice spectroscopy of light pseudoscalar hadrons"}},
         {F::abstract,
          {"We report quenched lattice simulations with improved staggered fermions, chiral extrapolation, "
           "finite volume corrections, renormalization constants, continuum limit scaling, heavy quark "
           "effective theory, twisted boundary conditions, smeared sources, correlator fits, systematic "
           "uncertainty budgets, and comparison with experimental resonance widths."}},
         {F::caption, {"Meson mass estimates"}},
         {F::column_header, {"State", "Estimate (MeV)"}},
         {F::row_header, {"pion", "kaon", "eta"}},
         {F::cell_value, {"139.6", "493.7", "547.9"}}}));
    out.push_back(make_table("mass-only",
                             {{F::caption, {"mass mass mass mass mass"}},
                              {F::column_header, {"mass", "mass"}},
                              {F::row_header, {"mass", "mass", "mass"}},
                              {F::cell_value, {"low", "high"}}}));
    return out;
}

std::vector<TaggerCase> unit_tagger_cases()
{
    auto path = test_data_dir() / "unit_tagger_cases.tsv";
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::vector<TaggerCase> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.starts_with('#')) {
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw std::runtime_error("bad tagger case: " + line);
        }
        TaggerCase c{line.substr(0, tab), {}};
        std::string labels = line.substr(tab + 1);
        if (labels != "-") {
            std::stringstream ss(labels);
            std::string item;
            while (std::getline(ss, item, ';')) {
                auto bar = item.find('|');
                c.expected.push_back({item.substr(0, bar), item.substr(bar + 1)});
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

oracle::StatsOracle make_oracle(const tsn::Index& index, const std::vector<tsn::TableRecord>& records)
{
    std::stringstream stats;
    std::stringstream lengths;
    tsn::write_stats_tsv(stats, index);
    tsn::write_lengths_tsv(lengths, index);
    return oracle::StatsOracle(stats, lengths, records, index.tokenizer());
}

TempDir::TempDir(const std::string& prefix)
{
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            (prefix + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir()
{
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

}  // namespace fixtures
