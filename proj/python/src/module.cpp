#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>
#include <optional>

#include "tablesearch/cli/pipeline.hpp"
#include "tablesearch/corpus/numeric.hpp"
#include "tablesearch/corpus/record_io.hpp"
#include "tablesearch/corpus/xml_reader.hpp"
#include "tablesearch/error.hpp"
#include "tablesearch/evaluation/metrics.hpp"
#include "tablesearch/ranker/explain.hpp"

namespace py = pybind11;
using namespace tablesearch;

namespace {

using Ranking = std::vector<std::pair<std::string, double>>;

Ranking to_pairs(const std::vector<RankedTable>& ranking)
{
    Ranking out;
    out.reserve(ranking.size());
    for (const auto& r : ranking) {
        out.emplace_back(r.table_id, r.score);
    }
    return out;
}

std::vector<RankedTable> from_ids(const std::vector<std::string>& ids)
{
    std::vector<RankedTable> out;
    double score = static_cast<double>(ids.size());
    for (const auto& id : ids) {
        out.push_back({id, score});
        score -= 1.0;
    }
    return out;
}

RankerKind ranker_arg(const std::optional<std::string>& name, RankerKind fallback)
{
    if (!name) {
        return fallback;
    }
    auto kind = ranker_from_name(*name);
    if (!kind) {
        throw py::value_error("unknown ranker '" + *name + "'");
    }
    return *kind;
}

py::dict analyzed_to_dict(const AnalyzedQuery& q)
{
    py::list concepts;
    for (const auto& c : q.concepts) {
        py::dict d;
        d["text"] = c.text;
        d["tokens"] = c.tokens;
        d["weight"] = c.weight;
        d["raw_score"] = c.raw_score;
        d["source"] = c.source == ConceptSource::entity ? "entity" : "noun_phrase";
        d["quantity"] = c.quantity ? py::object(py::str(*c.quantity)) : py::object(py::none());
        concepts.append(d);
    }
    py::list quantities;
    for (const auto& u : q.quantities) {
        py::dict d;
        d["type"] = u.type;
        d["units"] = u.units;
        d["weight"] = u.weight;
        quantities.append(d);
    }
    py::dict out;
    out["query"] = q.text;
    out["tokens"] = q.tokens;
    out["concepts"] = concepts;
    out["quantities"] = quantities;
    return out;
}

class Engine {
public:
    Engine(const std::filesystem::path& config_path, std::optional<std::filesystem::path> index_path)
        : config_(load_config(config_path))
    {
        auto path = index_path.value_or(config_.paths.index);
        if (!path.empty() && std::filesystem::exists(path / "manifest.json")) {
            index_ = std::make_unique<Index>(Index::load(path));
        } else {
            index_ = std::make_unique<Index>(Index::build(ingest_xml(config_.paths.corpus).records));
        }
        analyzer_ = std::make_unique<QueryAnalyzer>(load_analyzer_resources(config_, index_.get()));
    }

    Ranking search(const std::string& query, const std::optional<std::string>& ranker, std::optional<std::size_t> k)
    {
        return to_pairs(tablesearch::search(*index_, *analyzer_, config_, query, ranker_arg(ranker, config_.ranker),
                                            k.value_or(config_.k)));
    }

    py::dict analyze(const std::string& query, const std::optional<std::string>& mode) const
    {
        ConceptMode m = config_.concept_mode;
        if (mode) {
            auto parsed = concept_mode_from_name(*mode);
            if (!parsed) {
                throw py::value_error("unknown concept mode '" + *mode + "'");
            }
            m = *parsed;
        }
        return analyzed_to_dict(analyzer_->analyze(query, m));
    }

    std::string explain(const std::string& query, const std::optional<std::string>& ranker) const
    {
        auto kind = ranker_arg(ranker, config_.ranker);
        AnalyzedQuery analyzed;
        if (kind == RankerKind::maitred) {
            analyzed = analyzer_->analyze(query, config_.concept_mode);
        } else {
            analyzed.text = query;
            analyzed.tokens = index_->tokenizer().terms(query);
        }
        return to_indri(build_query_tree(analyzed, kind, config_.model));
    }

    py::dict evaluate(const std::map<std::string, Ranking>& run, std::optional<std::filesystem::path> qrels) const
    {
        Run converted;
        for (const auto& [qid, ranking] : run) {
            auto& target = converted[qid];
            for (const auto& [id, score] : ranking) {
                target.push_back({id, score});
            }
            sort_ranking(target, target.size());
        }
        auto report = evaluate_run(converted, read_qrels_file(qrels.value_or(config_.paths.qrels)));
        py::dict per_query;
        for (const auto& [qid, m] : report.per_query) {
            py::dict d;
            d["ap"] = m.ap;
            d["ndcg"] = m.ndcg;
            d["err"] = m.err;
            per_query[py::str(qid)] = d;
        }
        py::dict out;
        out["map"] = report.map;
        out["ndcg"] = report.ndcg;
        out["err"] = report.err;
        out["per_query"] = per_query;
        return out;
    }

    void set_params(std::optional<double> alpha, std::optional<double> beta, std::optional<bool> prior)
    {
        ModelParams params = config_.model;
        params.alpha = alpha.value_or(params.alpha);
        params.beta = beta.value_or(params.beta);
        params.prior_enabled = prior.value_or(params.prior_enabled);
        params.validate();
        config_.model = params;
    }

    [[nodiscard]] std::size_t table_count() const { return index_->table_count(); }
    [[nodiscard]] double alpha() const { return config_.model.alpha; }
    [[nodiscard]] double beta() const { return config_.model.beta; }
    [[nodiscard]] bool prior() const { return config_.model.prior_enabled; }

private:
    Config config_;
    std::unique_ptr<Index> index_;
    std::unique_ptr<QueryAnalyzer> analyzer_;
};

py::dict record_fields(const TableRecord& r)
{
    py::dict out;
    for (auto f : kAllFields) {
        out[py::str(std::string(field_name(f)))] = r.units(f);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Scientific table search: indexing, query analysis, ranking and evaluation.";

    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<FileError>(m, "FileError", PyExc_OSError);
    py::register_exception<QueryError>(m, "QueryError", PyExc_ValueError);
    py::register_exception<DuplicateTableError>(m, "DuplicateTableError", PyExc_ValueError);
    py::register_exception<TrainingError>(m, "TrainingError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<TableRecord>(m, "TableRecord")
        .def_readonly("table_id", &TableRecord::table_id)
        .def_readonly("doc_id", &TableRecord::doc_id)
        .def_readonly("numeric_cell_count", &TableRecord::numeric_cell_count)
        .def_readonly("total_cell_count", &TableRecord::total_cell_count)
        .def_property_readonly("fields", &record_fields)
        .def("__repr__", [](const TableRecord& r) { return "<TableRecord " + r.table_id + ">"; });

    m.def(
        "parse_table_xml",
        [](const std::string& document, const std::string& doc_id) {
            return parse_table_xml(document, doc_id).tables;
        },
        py::arg("document"), py::arg("doc_id") = "doc", "Tables of an XML document.");
    m.def("load_records", &read_records_file, py::arg("path"), "Records from a JSON-lines file.");
    m.def(
        "is_numeric_cell", [](const std::string& text) { return is_numeric_cell(text); }, py::arg("text"));
    m.def(
        "tokenize", [](const std::string& text) { return Tokenizer().terms(text); }, py::arg("text"),
        "Index terms of a text.");

    m.def(
        "average_precision",
        [](const std::vector<std::string>& ranking, const std::map<std::string, int>& grades) {
            return average_precision(from_ids(ranking), grades);
        },
        py::arg("ranking"), py::arg("grades"));
    m.def(
        "ndcg",
        [](const std::vector<std::string>& ranking, const std::map<std::string, int>& grades, std::size_t depth) {
            return ndcg(from_ids(ranking), grades, depth);
        },
        py::arg("ranking"), py::arg("grades"), py::arg("depth") = kNdcgDepth);
    m.def(
        "err",
        [](const std::vector<std::string>& ranking, const std::map<std::string, int>& grades, std::size_t depth) {
            return err(from_ids(ranking), grades, depth);
        },
        py::arg("ranking"), py::arg("grades"), py::arg("depth") = kErrDepth);

    py::class_<Engine>(m, "Engine")
        .def(py::init<const std::filesystem::path&, std::optional<std::filesystem::path>>(), py::arg("config"),
             py::arg("index") = py::none(),
             "Loads the configured index, or builds one from the configured corpus.")
        .def("search", &Engine::search, py::arg("query"), py::arg("ranker") = py::none(), py::arg("k") = py::none(),
             py::call_guard<py::gil_scoped_release>())
        .def("analyze", &Engine::analyze, py::arg("query"), py::arg("mode") = py::none())
        .def("explain", &Engine::explain, py::arg("query"), py::arg("ranker") = py::none())
        .def("evaluate", &Engine::evaluate, py::arg("run"), py::arg("qrels") = py::none())
        .def("set_params", &Engine::set_params, py::arg("alpha") = py::none(), py::arg("beta") = py::none(),
             py::arg("prior") = py::none())
        .def_property_readonly("table_count", &Engine::table_count)
        .def_property_readonly("alpha", &Engine::alpha)
        .def_property_readonly("beta", &Engine::beta)
        .def_property_readonly("prior", &Engine::prior);
}
