#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "tablesearch/corpus/table_record.hpp"
#include "tablesearch/index/index.hpp"
#include "tablesearch/queryintel/unit_miner.hpp"

namespace fixtures {

std::filesystem::path data_dir();
std::filesystem::path test_data_dir();

using FieldUnits = std::pair<tablesearch::FieldType, std::vector<std::string>>;

/// A record with the given units; cell counters recomputed.
tablesearch::TableRecord make_table(std::string id, std::initializer_list<FieldUnits> fields);

/// The sixteen tables under data/corpus.
std::vector<tablesearch::TableRecord> bundled_corpus();

/// Two tables on which term-vector cosine and field language models disagree
/// for the query "meson mass": "meson-masses" holds both terms once among
/// many others, "mass-only" repeats "mass" ten times.
std::vector<tablesearch::TableRecord> meson_tables();

struct TaggerCase {
    std::string text;
    std::vector<tablesearch::UnitPair> expected;
};

/// tests/data/unit_tagger_cases.tsv: "text<TAB>phrase|Type;phrase|Type" or "-".
std::vector<TaggerCase> unit_tagger_cases();

/// Oracle fed with the index's own TSV dumps.
oracle::StatsOracle make_oracle(const tablesearch::Index& index, const std::vector<tablesearch::TableRecord>& records);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& prefix);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace fixtures
