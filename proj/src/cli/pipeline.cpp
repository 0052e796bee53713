#include "tablesearch/cli/pipeline.hpp"

#include <algorithm>
#include <ostream>

#include "tablesearch/baselines/baselines.hpp"
#include "tablesearch/corpus/xml_reader.hpp"
#include "tablesearch/error.hpp"
#include "tablesearch/ranker/builders.hpp"
#include "tablesearch/ranker/rank.hpp"

namespace tablesearch {

IngestResult ingest_xml(const std::filesystem::path& path)
{
    if (!std::filesystem::exists(path)) {
        throw FileError("no such file or directory: " + path.string());
    }
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(path)) {
        for (const auto& entry : std::filesystem::directory_iterator(path)) {
            if (entry.is_regular_file() && entry.path().extension() == ".xml") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
    } else {
        files.push_back(path);
    }
    IngestResult result;
    for (const auto& file : files) {
        auto parsed = parse_table_xml_file(file);
        for (auto& w : parsed.warnings) {
            result.warnings.push_back(file.filename().string() + ": " + w);
        }
        std::move(parsed.tables.begin(), parsed.tables.end(), std::back_inserter(result.records));
    }
    return result;
}

AnalyzerResources load_analyzer_resources(const Config& config, const Index* index)
{
    AnalyzerResources resources;
    resources.index = index;
    const auto& p = config.paths;
    if (!p.gazetteer.empty()) {
        resources.gazetteer = Gazetteer::load(p.gazetteer);
    }
    if (!p.lexicon.empty()) {
        resources.lexicon = PosLexicon::load(p.lexicon);
    } else {
        resources.lexicon = PosLexicon();
    }
    if (!p.ontology.empty()) {
        resources.ontology = QuantityOntology::load(p.ontology);
    }
    if (!p.classifier.empty() && resources.ontology) {
        resources.classifier = QuantityClassifier::load(p.classifier);
        resources.classifier->set_threshold(config.quantity.threshold);
    }
    if (!p.keyness_model.empty()) {
        resources.keyness = KeynessModel::load(p.keyness_model);
    }
    return resources;
}

QueryNode build_query_tree(const AnalyzedQuery& query, RankerKind ranker, const ModelParams& params)
{
    if (query.tokens.empty()) {
        throw QueryError("query has no searchable terms: '" + query.text + "'");
    }
    switch (ranker) {
    case RankerKind::terms: return build_query_terms(query.tokens, params.field_weights);
    case RankerKind::bow: return indri_bow_query(query.tokens);
    case RankerKind::sdm: return indri_sdm_query(query.tokens, params.sdm, params.window_width);
    default: return build_full_query(query, params);
    }
}

std::vector<RankedTable> search(const Index& index, const QueryAnalyzer& analyzer, const Config& config,
                                std::string_view query, RankerKind ranker, std::size_t k)
{
    auto tokens = index.tokenizer().terms(query);
    if (tokens.empty()) {
        throw QueryError("query has no searchable terms: '" + std::string(query) + "'");
    }
    switch (ranker) {
    case RankerKind::bm25: return rank_baseline(BaselineKind::bm25, tokens, index, config.bm25, {}, k);
    case RankerKind::bm25f: return rank_baseline(BaselineKind::bm25f, tokens, index, config.bm25, {}, k);
    case RankerKind::tablerank:
        return rank_baseline(BaselineKind::tablerank, tokens, index, config.bm25, config.model.field_weights, k);
    default: break;
    }
    AnalyzedQuery analyzed;
    if (ranker == RankerKind::maitred) {
        analyzed = analyzer.analyze(query, config.concept_mode);
    } else {
        analyzed.text = std::string(query);
        analyzed.tokens = tokens;
    }
    auto tree = build_query_tree(analyzed, ranker, config.model);
    ModelParams params = config.model;
    if (ranker != RankerKind::maitred) {
        params.prior_enabled = false;
    }
    return rank(index, tree, params, k);
}

Run search_topics(const Index& index, const QueryAnalyzer& analyzer, const Config& config,
                  const std::vector<Topic>& topics, RankerKind ranker, std::size_t k)
{
    Run run;
    for (const auto& topic : topics) {
        run[topic.id] = search(index, analyzer, config, topic.title, ranker, k);
    }
    return run;
}

void write_report(std::ostream& out, const EvaluationReport& report)
{
    auto old_precision = out.precision(6);
    out << std::fixed;
    for (const auto& [qid, m] : report.per_query) {
        out << qid << "\tmap=" << m.ap << "\tndcg@20=" << m.ndcg << "\terr@20=" << m.err << '\n';
    }
    out << "all\tmap=" << report.map << "\tndcg@20=" << report.ndcg << "\terr@20=" << report.err
        << "\tqueries=" << report.query_count() << '\n';
    out << std::defaultfloat;
    out.precision(old_precision);
}

SweepResult sweep(const Index& index, const QueryAnalyzer& analyzer, const Config& config,
                  const std::vector<Topic>& topics, const Judgments& judgments)
{
    SweepResult result;
    for (double a : config.sweep.alpha) {
        for (double b : config.sweep.beta) {
            if (a >= 0.0 && b >= 0.0 && a + b <= 1.0 + 1e-12) {
                result.grid.push_back({a, b});
            }
        }
    }
    if (result.grid.empty()) {
        throw std::invalid_argument("parameter grid is empty");
    }

    std::vector<std::string> ids;
    for (const auto& topic : topics) {
        if (judgments.relevant_count(topic.id) > 0) {
            ids.push_back(topic.id);
        }
    }
    const auto& folds_path = config.paths.folds;
    if (!folds_path.empty() && std::filesystem::exists(folds_path)) {
        result.folds = read_folds(folds_path);
        for (const auto& id : ids) {
            if (!result.folds.contains(id)) {
                throw FormatError("folds file " + folds_path.string() + " has no entry for query " + id);
            }
        }
        std::erase_if(result.folds, [&](const auto& kv) {
            return std::find(ids.begin(), ids.end(), kv.first) == ids.end();
        });
    } else {
        result.folds = assign_folds(ids, config.sweep.folds, config.seed);
        if (!folds_path.empty()) {
            write_folds(folds_path, result.folds);
        }
    }

    auto per_query = [&](const ModelParams& params) {
        Config c = config;
        c.model = params;
        auto report = evaluate_run(search_topics(index, analyzer, c, topics, RankerKind::maitred, config.k),
                                   judgments);
        std::map<std::string, double> scores;
        double total = 0.0;
        for (const auto& [qid, m] : report.per_query) {
            scores[qid] = metric_value(m, config.sweep.metric);
            total += scores[qid];
        }
        return std::pair{scores, report.per_query.empty() ? 0.0 : total / static_cast<double>(scores.size())};
    };

    std::vector<std::map<std::string, double>> scores;
    for (const auto& point : result.grid) {
        ModelParams params = config.model;
        params.alpha = point.alpha;
        params.beta = point.beta;
        scores.push_back(per_query(params).first);
    }
    result.cv = cross_validate(scores, result.folds, config.sweep.folds);
    result.untuned = per_query(config.model).second;
    return result;
}

void write_sweep_report(std::ostream& out, const SweepResult& result, Metric metric)
{
    out << "grid_points\t" << result.grid.size() << '\n';
    for (std::size_t f = 0; f < result.cv.chosen.size(); ++f) {
        const auto& p = result.grid[result.cv.chosen[f]];
        std::size_t n = static_cast<std::size_t>(
            std::count_if(result.folds.begin(), result.folds.end(), [&](const auto& kv) {
                return kv.second == static_cast<int>(f);
            }));
        out << "fold " << f << "\tqueries=" << n << "\talpha=" << p.alpha << "\tbeta=" << p.beta << '\n';
    }
    out << "pooled_" << metric_name(metric) << '\t' << result.cv.pooled << '\n';
    out << "configured_" << metric_name(metric) << '\t' << result.untuned << '\n';
}

QuantityClassifier train_quantity_classifier(const std::vector<UnitPair>& pairs,
                                             const std::vector<TableRecord>& training_records,
                                             const QuantityOntology& ontology, const QuantityConfig& config)
{
    auto index = Index::build(training_records, ontology.tokenizer());
    auto cooccurrence = CooccurrenceTable::build(index, ontology);
    QuantityFeatureExtractor extractor(ontology, cooccurrence);
    QuantityTrainingOptions options;
    options.min_examples = config.min_examples;
    options.drop_sparse = config.drop_sparse;
    auto classifier = QuantityClassifier::train(pairs, extractor, cooccurrence, options);
    classifier.set_threshold(config.threshold);
    return classifier;
}

}  // namespace tablesearch
