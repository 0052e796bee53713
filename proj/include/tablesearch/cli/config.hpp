#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tablesearch/baselines/baselines.hpp"
#include "tablesearch/evaluation/metrics.hpp"
#include "tablesearch/queryintel/analyzer.hpp"
#include "tablesearch/ranker/params.hpp"

namespace tablesearch {

/// Invalid configuration: unknown key, wrong type, or out-of-range value.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RankerKind {
    maitred,    ///< terms + concepts + quantities, numeric prior
    terms,      ///< field-mixture terms only
    bow,        ///< full-text query likelihood
    sdm,        ///< full-text sequential dependence
    bm25,
    bm25f,
    tablerank,
};

std::string_view ranker_name(RankerKind kind);
std::optional<RankerKind> ranker_from_name(std::string_view name);

struct ConfigPaths {
    std::filesystem::path corpus;
    std::filesystem::path records;
    std::filesystem::path index;
    std::filesystem::path ontology;
    std::filesystem::path gazetteer;
    std::filesystem::path lexicon;
    std::filesystem::path classifier;
    std::filesystem::path keyness_model;
    std::filesystem::path training_corpus;
    std::filesystem::path qrels;
    std::filesystem::path topics;
    std::filesystem::path folds;
};

struct SweepConfig {
    int folds = 10;
    Metric metric = Metric::map;
    std::vector<double> alpha = {0.0, 0.1, 0.2, 0.3};
    std::vector<double> beta = {0.0, 0.1, 0.2};
};

struct QuantityConfig {
    double threshold = 0.65;
    std::size_t min_examples = 5;
    bool drop_sparse = true;
};

struct Config {
    ConfigPaths paths;
    ModelParams model;
    BM25Params bm25;
    RankerKind ranker = RankerKind::maitred;
    ConceptMode concept_mode = ConceptMode::entity;
    std::size_t k = kDefaultDepth;
    std::uint64_t seed = 13;
    QuantityConfig quantity;
    SweepConfig sweep;
};

/// Parses a JSON config. Relative paths are resolved against base_dir.
/// Unknown keys, wrong types and invalid values throw ConfigError.
Config parse_config(std::string_view json_text, const std::filesystem::path& base_dir);
/// Throws FileError when the file is missing.
Config load_config(const std::filesystem::path& path);

/// Serializes the config (paths as given, made relative to base_dir when
/// possible).
std::string config_to_json(const Config& config, const std::filesystem::path& base_dir);

}  // namespace tablesearch
