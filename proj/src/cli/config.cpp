#include "tablesearch/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tablesearch/error.hpp"

namespace tablesearch {

namespace {

using nlohmann::json;

constexpr std::pair<RankerKind, std::string_view> kRankerNames[] = {
    {RankerKind::maitred, "maitred"}, {RankerKind::terms, "terms"},   {RankerKind::bow, "bow"},
    {RankerKind::sdm, "sdm"},         {RankerKind::bm25, "bm25"},     {RankerKind::bm25f, "bm25f"},
    {RankerKind::tablerank, "tablerank"},
};

void check_keys(const json& object, std::string_view where, std::initializer_list<std::string_view> allowed)
{
    if (!object.is_object()) {
        throw ConfigError(std::string(where) + " must be an object");
    }
    for (const auto& [key, _] : object.items()) {
        bool known = false;
        for (auto a : allowed) {
            known = known || a == key;
        }
        if (!known) {
            throw ConfigError("unknown key '" + key + "' in " + std::string(where));
        }
    }
}

double number(const json& value, const std::string& where)
{
    if (!value.is_number()) {
        throw ConfigError(where + " must be a number");
    }
    return value.get<double>();
}

std::vector<double> number_list(const json& value, const std::string& where)
{
    if (!value.is_array() || value.empty()) {
        throw ConfigError(where + " must be a non-empty array of numbers");
    }
    std::vector<double> out;
    for (const auto& v : value) {
        out.push_back(number(v, where));
    }
    return out;
}

std::string text(const json& value, const std::string& where)
{
    if (!value.is_string()) {
        throw ConfigError(where + " must be a string");
    }
    return value.get<std::string>();
}

SmoothingParams smoothing(const json& value, const std::string& where)
{
    check_keys(value, where, {"lambda", "mu"});
    SmoothingParams s;
    if (value.contains("lambda")) {
        s.lambda = number(value["lambda"], where + ".lambda");
    }
    if (value.contains("mu")) {
        s.mu = number(value["mu"], where + ".mu");
    }
    return s;
}

std::vector<FieldWeight> field_weights(const json& value, const std::string& where)
{
    if (!value.is_object() || value.empty()) {
        throw ConfigError(where + " must be a non-empty object of field weights");
    }
    std::vector<FieldWeight> out;
    for (const auto& [key, w] : value.items()) {
        auto scope = FieldScope::from_name(key);
        if (!scope) {
            throw ConfigError("unknown field '" + key + "' in " + where);
        }
        out.push_back({*scope, number(w, where + "." + key)});
    }
    std::sort(out.begin(), out.end(), [](const FieldWeight& a, const FieldWeight& b) { return a.scope < b.scope; });
    return out;
}

std::array<double, kFieldCount> per_field(const json& value, const std::string& where,
                                          std::array<double, kFieldCount> base)
{
    if (!value.is_object()) {
        throw ConfigError(where + " must be an object");
    }
    for (const auto& [key, w] : value.items()) {
        auto field = field_from_name(key);
        if (!field) {
            throw ConfigError("unknown field '" + key + "' in " + where);
        }
        base[field_index(*field)] = number(w, where + "." + key);
    }
    return base;
}

void parse_paths(const json& value, const std::filesystem::path& base, ConfigPaths& paths)
{
    check_keys(value, "paths",
               {"corpus", "records", "index", "ontology", "gazetteer", "lexicon", "classifier", "keyness_model",
                "training_corpus", "qrels", "topics", "folds"});
    auto read = [&](const char* key, std::filesystem::path& target) {
        if (value.contains(key) && !value[key].is_null()) {
            std::filesystem::path p = text(value[key], std::string("paths.") + key);
            target = p.is_absolute() ? p : base / p;
        }
    };
    read("corpus", paths.corpus);
    read("records", paths.records);
    read("index", paths.index);
    read("ontology", paths.ontology);
    read("gazetteer", paths.gazetteer);
    read("lexicon", paths.lexicon);
    read("classifier", paths.classifier);
    read("keyness_model", paths.keyness_model);
    read("training_corpus", paths.training_corpus);
    read("qrels", paths.qrels);
    read("topics", paths.topics);
    read("folds", paths.folds);
}

void parse_model(const json& value, ModelParams& model)
{
    check_keys(value, "model",
               {"alpha", "beta", "prior", "corpus_model", "window_width", "sdm", "fulltext_smoothing",
                "fielded_smoothing", "field_weights"});
    if (value.contains("alpha")) {
        model.alpha = number(value["alpha"], "model.alpha");
    }
    if (value.contains("beta")) {
        model.beta = number(value["beta"], "model.beta");
    }
    if (value.contains("prior")) {
        if (!value["prior"].is_boolean()) {
            throw ConfigError("model.prior must be a boolean");
        }
        model.prior_enabled = value["prior"].get<bool>();
    }
    if (value.contains("corpus_model")) {
        auto name = text(value["corpus_model"], "model.corpus_model");
        if (name == "per_field") {
            model.corpus_model = CorpusModel::per_field;
        } else if (name == "global") {
            model.corpus_model = CorpusModel::global;
        } else {
            throw ConfigError("model.corpus_model must be 'per_field' or 'global'");
        }
    }
    if (value.contains("window_width")) {
        double w = number(value["window_width"], "model.window_width");
        if (w < 2 || w != static_cast<unsigned>(w)) {
            throw ConfigError("model.window_width must be an integer >= 2");
        }
        model.window_width = static_cast<unsigned>(w);
    }
    if (value.contains("sdm")) {
        const auto& sdm = value["sdm"];
        check_keys(sdm, "model.sdm", {"unigram", "ordered", "unordered"});
        if (sdm.contains("unigram")) {
            model.sdm.unigram = number(sdm["unigram"], "model.sdm.unigram");
        }
        if (sdm.contains("ordered")) {
            model.sdm.ordered = number(sdm["ordered"], "model.sdm.ordered");
        }
        if (sdm.contains("unordered")) {
            model.sdm.unordered = number(sdm["unordered"], "model.sdm.unordered");
        }
    }
    if (value.contains("fulltext_smoothing")) {
        model.fulltext = smoothing(value["fulltext_smoothing"], "model.fulltext_smoothing");
    }
    if (value.contains("fielded_smoothing")) {
        model.fielded = smoothing(value["fielded_smoothing"], "model.fielded_smoothing");
    }
    if (value.contains("field_weights")) {
        model.field_weights = field_weights(value["field_weights"], "model.field_weights");
    }
}

void parse_bm25(const json& value, BM25Params& bm25)
{
    check_keys(value, "bm25", {"k1", "b", "field_weights", "field_b"});
    if (value.contains("k1")) {
        bm25.k1 = number(value["k1"], "bm25.k1");
    }
    if (value.contains("b")) {
        bm25.b = number(value["b"], "bm25.b");
        bm25.field_b.fill(bm25.b);
    }
    if (value.contains("field_weights")) {
        bm25.field_weight = per_field(value["field_weights"], "bm25.field_weights", bm25.field_weight);
    }
    if (value.contains("field_b")) {
        bm25.field_b = per_field(value["field_b"], "bm25.field_b", bm25.field_b);
    }
}

}  // namespace

std::string_view ranker_name(RankerKind kind)
{
    for (const auto& [k, name] : kRankerNames) {
        if (k == kind) {
            return name;
        }
    }
    return "maitred";
}

std::optional<RankerKind> ranker_from_name(std::string_view name)
{
    for (const auto& [k, n] : kRankerNames) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

Config parse_config(std::string_view json_text, const std::filesystem::path& base_dir)
{
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(root, "config",
               {"paths", "model", "bm25", "ranker", "concept_mode", "k", "seed", "quantity", "sweep"});
    Config config;
    if (root.contains("paths")) {
        parse_paths(root["paths"], base_dir, config.paths);
    }
    if (root.contains("model")) {
        parse_model(root["model"], config.model);
    }
    if (root.contains("bm25")) {
        parse_bm25(root["bm25"], config.bm25);
    }
    if (root.contains("ranker")) {
        auto name = text(root["ranker"], "ranker");
        auto kind = ranker_from_name(name);
        if (!kind) {
            throw ConfigError("unknown ranker '" + name + "'");
        }
        config.ranker = *kind;
    }
    if (root.contains("concept_mode")) {
        auto name = text(root["concept_mode"], "concept_mode");
        auto mode = concept_mode_from_name(name);
        if (!mode) {
            throw ConfigError("concept_mode must be 'entity' or 'noun_phrase'");
        }
        config.concept_mode = *mode;
    }
    if (root.contains("k")) {
        double k = number(root["k"], "k");
        if (k < 0 || k != static_cast<double>(static_cast<std::size_t>(k))) {
            throw ConfigError("k must be a non-negative integer");
        }
        config.k = static_cast<std::size_t>(k);
    }
    if (root.contains("seed")) {
        if (!root["seed"].is_number_unsigned()) {
            throw ConfigError("seed must be a non-negative integer");
        }
        config.seed = root["seed"].get<std::uint64_t>();
    }
    if (root.contains("quantity")) {
        const auto& q = root["quantity"];
        check_keys(q, "quantity", {"threshold", "min_examples", "drop_sparse"});
        if (q.contains("threshold")) {
            config.quantity.threshold = number(q["threshold"], "quantity.threshold");
        }
        if (q.contains("min_examples")) {
            config.quantity.min_examples = static_cast<std::size_t>(number(q["min_examples"], "quantity.min_examples"));
        }
        if (q.contains("drop_sparse")) {
            if (!q["drop_sparse"].is_boolean()) {
                throw ConfigError("quantity.drop_sparse must be a boolean");
            }
            config.quantity.drop_sparse = q["drop_sparse"].get<bool>();
        }
    }
    if (root.contains("sweep")) {
        const auto& s = root["sweep"];
        check_keys(s, "sweep", {"folds", "metric", "alpha", "beta"});
        if (s.contains("folds")) {
            config.sweep.folds = static_cast<int>(number(s["folds"], "sweep.folds"));
            if (config.sweep.folds < 1) {
                throw ConfigError("sweep.folds must be positive");
            }
        }
        if (s.contains("metric")) {
            auto name = text(s["metric"], "sweep.metric");
            auto metric = metric_from_name(name);
            if (!metric) {
                throw ConfigError("sweep.metric must be map, ndcg or err");
            }
            config.sweep.metric = *metric;
        }
        if (s.contains("alpha")) {
            config.sweep.alpha = number_list(s["alpha"], "sweep.alpha");
        }
        if (s.contains("beta")) {
            config.sweep.beta = number_list(s["beta"], "sweep.beta");
        }
    }
    try {
        config.model.validate();
        config.bm25.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(config.quantity.threshold >= 0.0 && config.quantity.threshold <= 1.0)) {
        throw ConfigError("quantity.threshold must lie in [0, 1]");
    }
    return config;
}

Config load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open config " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.parent_path());
}

std::string config_to_json(const Config& config, const std::filesystem::path& base_dir)
{
    auto rel = [&](const std::filesystem::path& p) -> json {
        if (p.empty()) {
            return nullptr;
        }
        return p.lexically_relative(base_dir).generic_string();
    };
    json fields = json::object();
    for (const auto& fw : config.model.field_weights) {
        fields[std::string(fw.scope.name())] = fw.weight;
    }
    json root = {
        {"paths",
         {{"corpus", rel(config.paths.corpus)},
          {"records", rel(config.paths.records)},
          {"index", rel(config.paths.index)},
          {"ontology", rel(config.paths.ontology)},
          {"gazetteer", rel(config.paths.gazetteer)},
          {"lexicon", rel(config.paths.lexicon)},
          {"classifier", rel(config.paths.classifier)},
          {"keyness_model", rel(config.paths.keyness_model)},
          {"training_corpus", rel(config.paths.training_corpus)},
          {"qrels", rel(config.paths.qrels)},
          {"topics", rel(config.paths.topics)},
          {"folds", rel(config.paths.folds)}}},
        {"model",
         {{"alpha", config.model.alpha},
          {"beta", config.model.beta},
          {"prior", config.model.prior_enabled},
          {"corpus_model", config.model.corpus_model == CorpusModel::global ? "global" : "per_field"},
          {"window_width", config.model.window_width},
          {"sdm", {{"unigram", config.model.sdm.unigram}, {"ordered", config.model.sdm.ordered},
                   {"unordered", config.model.sdm.unordered}}},
          {"fulltext_smoothing", {{"lambda", config.model.fulltext.lambda}, {"mu", config.model.fulltext.mu}}},
          {"fielded_smoothing", {{"lambda", config.model.fielded.lambda}, {"mu", config.model.fielded.mu}}},
          {"field_weights", fields}}},
        {"bm25", {{"k1", config.bm25.k1}, {"b", config.bm25.b}}},
        {"ranker", ranker_name(config.ranker)},
        {"concept_mode", concept_mode_name(config.concept_mode)},
        {"k", config.k},
        {"seed", config.seed},
        {"quantity",
         {{"threshold", config.quantity.threshold},
          {"min_examples", config.quantity.min_examples},
          {"drop_sparse", config.quantity.drop_sparse}}},
        {"sweep",
         {{"folds", config.sweep.folds},
          {"metric", metric_name(config.sweep.metric)},
          {"alpha", config.sweep.alpha},
          {"beta", config.sweep.beta}}},
    };
    return root.dump(2);
}

}  // namespace tablesearch
