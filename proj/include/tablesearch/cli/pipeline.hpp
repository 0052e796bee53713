#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tablesearch/cli/config.hpp"
#include "tablesearch/corpus/table_record.hpp"
#include "tablesearch/evaluation/trec.hpp"
#include "tablesearch/index/index.hpp"
#include "tablesearch/queryintel/analyzer.hpp"
#include "tablesearch/queryintel/unit_miner.hpp"

namespace tablesearch {

struct IngestResult {
    std::vector<TableRecord> records;
    std::vector<std::string> warnings;  ///< prefixed with the file name
};

/// Parses one XML file or every *.xml file of a directory (sorted by name).
/// Throws FileError when the path does not exist.
IngestResult ingest_xml(const std::filesystem::path& path);

/// Loads the query-analysis resources named in the config. Paths left empty
/// are skipped; configured paths that do not exist throw FileError.
AnalyzerResources load_analyzer_resources(const Config& config, const Index* index);

/// Query tree for the model rankers (maitred, terms, bow, sdm). Throws
/// QueryError when the query has no index terms.
QueryNode build_query_tree(const AnalyzedQuery& query, RankerKind ranker, const ModelParams& params);

/// One query through the configured ranker. Throws QueryError for a query
/// without index terms.
std::vector<RankedTable> search(const Index& index, const QueryAnalyzer& analyzer, const Config& config,
                                std::string_view query, RankerKind ranker, std::size_t k);

/// Every topic through the ranker.
Run search_topics(const Index& index, const QueryAnalyzer& analyzer, const Config& config,
                  const std::vector<Topic>& topics, RankerKind ranker, std::size_t k);

/// "map ndcg err" summary plus one line per query.
void write_report(std::ostream& out, const EvaluationReport& report);

struct SweepPoint {
    double alpha = 0.0;
    double beta = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> grid;
    std::map<std::string, int> folds;
    CrossValidationResult cv;
    double untuned = 0.0;  ///< metric of the configured parameters, no tuning
};

/// Cross-validated grid search over (alpha, beta) for the maitred ranker.
/// Fold assignment is read from config.paths.folds when the file exists,
/// otherwise drawn from the seed and written there (if a path is set).
SweepResult sweep(const Index& index, const QueryAnalyzer& analyzer, const Config& config,
                  const std::vector<Topic>& topics, const Judgments& judgments);
void write_sweep_report(std::ostream& out, const SweepResult& result, Metric metric);

/// Builds an index over the training corpus and fits one classifier per
/// quantity type from the mined pairs.
QuantityClassifier train_quantity_classifier(const std::vector<UnitPair>& pairs,
                                             const std::vector<TableRecord>& training_records,
                                             const QuantityOntology& ontology, const QuantityConfig& config);

}  // namespace tablesearch
