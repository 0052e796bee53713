// tablesearch: command-line entry point for ingesting, indexing, searching
// and evaluating scientific table collections.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tablesearch/cli/config.hpp"
#include "tablesearch/cli/pipeline.hpp"
#include "tablesearch/corpus/record_io.hpp"
#include "tablesearch/error.hpp"
#include "tablesearch/ranker/builders.hpp"
#include "tablesearch/ranker/explain.hpp"

namespace ts = tablesearch;

namespace {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kMissingFile = 3,
    kMalformed = 4,
    kEmptyQuery = 5,
    kTraining = 6,
};

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
    std::optional<double> beta;
    bool no_prior = false;
    std::string mode;
    std::string ranker;
    std::optional<std::size_t> k;
};

ts::Config resolve_config(const Overrides& o)
{
    ts::Config config;
    if (!o.config_path.empty()) {
        config = ts::load_config(o.config_path);
    } else if (const char* env = std::getenv("TABLESEARCH_CONFIG"); env != nullptr && *env != '\0') {
        config = ts::load_config(env);
    }
    if (o.seed) {
        config.seed = *o.seed;
    }
    if (o.alpha) {
        config.model.alpha = *o.alpha;
    }
    if (o.beta) {
        config.model.beta = *o.beta;
    }
    if (o.no_prior) {
        config.model.prior_enabled = false;
    }
    if (!o.mode.empty()) {
        auto mode = ts::concept_mode_from_name(o.mode);
        if (!mode) {
            throw ts::ConfigError("--mode must be entity or noun_phrase");
        }
        config.concept_mode = *mode;
    }
    if (!o.ranker.empty()) {
        auto ranker = ts::ranker_from_name(o.ranker);
        if (!ranker) {
            throw ts::ConfigError("unknown ranker '" + o.ranker + "'");
        }
        config.ranker = *ranker;
    }
    if (o.k) {
        config.k = *o.k;
    }
    try {
        config.model.validate();
    } catch (const std::invalid_argument& e) {
        throw ts::ConfigError(e.what());
    }
    return config;
}

std::filesystem::path require(const std::string& flag, const std::filesystem::path& configured,
                              const std::string& what)
{
    std::filesystem::path p = flag.empty() ? configured : std::filesystem::path(flag);
    if (p.empty()) {
        throw ts::ConfigError("no " + what + " given (flag or config)");
    }
    return p;
}

/// Writes to the file when a path is given, else to stdout.
void emit(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw ts::FileError("cannot write " + path);
    }
    out << content;
}

std::vector<ts::TableRecord> load_records_or_xml(const std::filesystem::path& input)
{
    if (std::filesystem::is_directory(input) || input.extension() == ".xml") {
        auto ingested = ts::ingest_xml(input);
        for (const auto& w : ingested.warnings) {
            std::cerr << "warning: " << w << '\n';
        }
        return std::move(ingested.records);
    }
    return ts::read_records_file(input);
}

nlohmann::json analysis_json(const ts::AnalyzedQuery& q)
{
    nlohmann::json concepts = nlohmann::json::array();
    for (const auto& c : q.concepts) {
        concepts.push_back({{"text", c.text},
                            {"tokens", c.tokens},
                            {"source", c.source == ts::ConceptSource::entity ? "entity" : "noun_phrase"},
                            {"raw_score", c.raw_score},
                            {"weight", c.weight},
                            {"quantity", c.quantity ? nlohmann::json(*c.quantity) : nlohmann::json(nullptr)}});
    }
    nlohmann::json quantities = nlohmann::json::array();
    for (const auto& u : q.quantities) {
        quantities.push_back({{"type", u.type}, {"units", u.units}, {"weight", u.weight}});
    }
    return {{"query", q.text}, {"tokens", q.tokens}, {"concepts", concepts}, {"quantities", quantities}};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Search engine for tables in scientific documents"};
    app.require_subcommand(1);
    app.fallthrough();
    Overrides o;
    app.add_option("-c,--config", o.config_path, "JSON config file (default: $TABLESEARCH_CONFIG)");
    app.add_option("--seed", o.seed, "Seed for fold assignment");
    app.add_option("--alpha", o.alpha, "Weight of the concept component");
    app.add_option("--beta", o.beta, "Weight of the quantity component");
    app.add_flag("--no-prior", o.no_prior, "Disable the numeric table prior");
    app.add_option("--mode", o.mode, "Concept mode: entity or noun_phrase");
    app.add_option("--ranker", o.ranker, "maitred, terms, bow, sdm, bm25, bm25f or tablerank");
    app.add_option("-k,--depth", o.k, "Results per query");

    std::string input;
    std::string output;
    std::string index_dir;
    std::string query;
    std::string topics_path;
    std::string qrels_path;
    std::string qid = "q1";
    std::string tag;
    std::string compare_run;
    std::string records_path;
    std::string pairs_path;
    std::string training_path;
    std::string stats_path;
    std::string lengths_path;

    auto* ingest = app.add_subcommand("ingest", "Parse table XML into a record file");
    ingest->add_option("input", input, "XML file or directory (default: config corpus)");
    ingest->add_option("-o,--output", output, "Record file (default: config records)");

    auto* index_cmd = app.add_subcommand("index", "Build an index from a record file");
    index_cmd->add_option("records", input, "Record file or XML path (default: config records)");
    index_cmd->add_option("-o,--output", output, "Index directory (default: config index)");

    auto* search_cmd = app.add_subcommand("search", "Rank tables; prints a TREC run");
    search_cmd->add_option("query", query, "Keyword query");
    search_cmd->add_option("--topics", topics_path, "Run every topic of a TREC topics file");
    search_cmd->add_option("--index", index_dir, "Index directory (default: config index)");
    search_cmd->add_option("--qid", qid, "Query id for a single query");
    search_cmd->add_option("--tag", tag, "Run tag (default: ranker name)");
    search_cmd->add_option("-o,--output", output, "Run file (default: stdout)");

    auto* explain_cmd = app.add_subcommand("explain", "Print the structured query");
    explain_cmd->add_option("query", query, "Keyword query")->required();
    explain_cmd->add_option("--index", index_dir, "Index for noun-phrase keyness (optional)");

    auto* analyze_cmd = app.add_subcommand("analyze", "Print concepts and quantities as JSON");
    analyze_cmd->add_option("query", query, "Keyword query")->required();
    analyze_cmd->add_option("--index", index_dir, "Index for noun-phrase keyness (optional)");

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a run against qrels");
    eval_cmd->add_option("run", input, "TREC run file")->required();
    eval_cmd->add_option("--qrels", qrels_path, "Qrels (default: config qrels)");
    eval_cmd->add_option("--compare", compare_run, "Second run: report win/tie/loss and a paired t-test");

    auto* sweep_cmd = app.add_subcommand("sweep", "Cross-validated grid search over alpha and beta");
    sweep_cmd->add_option("--topics", topics_path, "Topics (default: config topics)");
    sweep_cmd->add_option("--qrels", qrels_path, "Qrels (default: config qrels)");
    sweep_cmd->add_option("--index", index_dir, "Index directory (default: config index)");

    auto* mine_cmd = app.add_subcommand("mine-units", "Collect (phrase, quantity type) training pairs");
    mine_cmd->add_option("input", input, "Record file or XML path (default: config training corpus)");
    mine_cmd->add_option("-o,--output", output, "Pairs TSV (default: stdout)");

    auto* train_cmd = app.add_subcommand("train-quantity", "Train the quantity classifier");
    train_cmd->add_option("pairs", pairs_path, "Pairs TSV from mine-units")->required();
    train_cmd->add_option("--training-corpus", training_path, "Corpus the pairs came from");
    train_cmd->add_option("-o,--output", output, "Classifier file (default: config classifier)");

    auto* stats_cmd = app.add_subcommand("dump-stats", "Write collection statistics as TSV");
    stats_cmd->add_option("--index", index_dir, "Index directory (default: config index)");
    stats_cmd->add_option("--stats", stats_path, "Term statistics TSV")->required();
    stats_cmd->add_option("--lengths", lengths_path, "Field lengths TSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        auto config = resolve_config(o);
        auto open_index = [&] {
            return ts::Index::load(require(index_dir, config.paths.index, "index directory"));
        };

        if (*ingest) {
            auto ingested = ts::ingest_xml(require(input, config.paths.corpus, "corpus"));
            for (const auto& w : ingested.warnings) {
                std::cerr << "warning: " << w << '\n';
            }
            auto target = require(output, config.paths.records, "record file");
            if (target.has_parent_path()) {
                std::filesystem::create_directories(target.parent_path());
            }
            ts::write_records_file(target, ingested.records);
            std::cerr << ingested.records.size() << " tables written to " << target.string() << '\n';
        } else if (*index_cmd) {
            auto records = load_records_or_xml(require(input, config.paths.records, "record file"));
            auto index = ts::Index::build(records);
            auto target = require(output, config.paths.index, "index directory");
            index.save(target);
            std::cerr << index.table_count() << " tables, " << index.vocabulary_size() << " terms indexed in "
                      << target.string() << '\n';
        } else if (*search_cmd) {
            if (query.empty() == topics_path.empty()) {
                throw ts::ConfigError("search needs either a query or --topics");
            }
            auto index = open_index();
            ts::QueryAnalyzer analyzer(ts::load_analyzer_resources(config, &index));
            std::string run_tag = tag.empty() ? std::string(ts::ranker_name(config.ranker)) : tag;
            std::ostringstream out;
            if (!topics_path.empty()) {
                auto topics = ts::read_topics_file(topics_path);
                ts::write_run(out, ts::search_topics(index, analyzer, config, topics, config.ranker, config.k),
                              run_tag);
            } else {
                ts::write_ranking(out, qid, ts::search(index, analyzer, config, query, config.ranker, config.k),
                                  run_tag);
            }
            emit(output, out.str());
        } else if (*explain_cmd || *analyze_cmd) {
            std::optional<ts::Index> index;
            if (!index_dir.empty()) {
                index = ts::Index::load(index_dir);
            }
            ts::QueryAnalyzer analyzer(ts::load_analyzer_resources(config, index ? &*index : nullptr));
            auto analyzed = analyzer.analyze(query, config.concept_mode);
            if (*analyze_cmd) {
                std::cout << analysis_json(analyzed).dump(2) << '\n';
            } else {
                ts::RankerKind kind = config.ranker;
                if (kind == ts::RankerKind::bm25 || kind == ts::RankerKind::bm25f ||
                    kind == ts::RankerKind::tablerank) {
                    throw ts::ConfigError("explain needs a query-tree ranker (maitred, terms, bow or sdm)");
                }
                std::cout << ts::to_indri(ts::build_query_tree(analyzed, kind, config.model));
            }
        } else if (*eval_cmd) {
            auto judgments = ts::read_qrels_file(require(qrels_path, config.paths.qrels, "qrels"));
            auto run = ts::read_run_file(input);
            auto report = ts::evaluate_run(run, judgments);
            ts::write_report(std::cout, report);
            if (!compare_run.empty()) {
                auto other = ts::read_run_file(compare_run);
                auto wtl = ts::win_tie_loss(run, other, judgments);
                std::cout << "win/tie/loss\t" << wtl.wins << '/' << wtl.ties << '/' << wtl.losses << '\n';
                auto other_report = ts::evaluate_run(other, judgments);
                std::vector<double> a;
                std::vector<double> b;
                for (const auto& [q, m] : report.per_query) {
                    a.push_back(m.ap);
                    b.push_back(other_report.per_query.at(q).ap);
                }
                if (a.size() >= 2) {
                    auto t = ts::paired_t_test(a, b);
                    std::cout << "paired_t\tt=" << t.t << "\tdf=" << t.degrees_of_freedom << "\tp=" << t.p_value
                              << '\n';
                }
            }
        } else if (*sweep_cmd) {
            auto index = open_index();
            ts::QueryAnalyzer analyzer(ts::load_analyzer_resources(config, &index));
            auto topics = ts::read_topics_file(require(topics_path, config.paths.topics, "topics"));
            auto judgments = ts::read_qrels_file(require(qrels_path, config.paths.qrels, "qrels"));
            auto result = ts::sweep(index, analyzer, config, topics, judgments);
            ts::write_sweep_report(std::cout, result, config.sweep.metric);
        } else if (*mine_cmd) {
            auto records = load_records_or_xml(require(input, config.paths.training_corpus, "training corpus"));
            auto ontology = ts::QuantityOntology::load(require("", config.paths.ontology, "ontology"));
            auto lexicon = config.paths.lexicon.empty() ? ts::PosLexicon() : ts::PosLexicon::load(config.paths.lexicon);
            auto pairs = ts::mine_unit_training_data(records, ontology, lexicon);
            std::ostringstream out;
            ts::write_unit_pairs(out, pairs);
            emit(output, out.str());
            std::cerr << pairs.size() << " pairs mined from " << records.size() << " tables\n";
        } else if (*train_cmd) {
            auto pairs = ts::read_unit_pairs_file(pairs_path);
            auto records =
                load_records_or_xml(require(training_path, config.paths.training_corpus, "training corpus"));
            auto ontology = ts::QuantityOntology::load(require("", config.paths.ontology, "ontology"));
            auto classifier = ts::train_quantity_classifier(pairs, records, ontology, config.quantity);
            auto target = require(output, config.paths.classifier, "classifier output");
            classifier.save(target);
            std::cerr << classifier.models().size() << " quantity types trained, written to " << target.string()
                      << '\n';
        } else if (*stats_cmd) {
            auto index = open_index();
            std::ofstream stats(stats_path);
            std::ofstream lengths(lengths_path);
            if (!stats || !lengths) {
                throw ts::FileError("cannot write statistics files");
            }
            ts::write_stats_tsv(stats, index);
            ts::write_lengths_tsv(lengths, index);
        }
        return kOk;
    } catch (const ts::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const ts::FileError& e) {
        std::cerr << "missing file: " << e.what() << '\n';
        return kMissingFile;
    } catch (const ts::FormatError& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return kMalformed;
    } catch (const ts::DuplicateTableError& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return kMalformed;
    } catch (const ts::QueryError& e) {
        std::cerr << "empty query: " << e.what() << '\n';
        return kEmptyQuery;
    } catch (const ts::TrainingError& e) {
        std::cerr << "training failed: " << e.what() << '\n';
        return kTraining;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
}
