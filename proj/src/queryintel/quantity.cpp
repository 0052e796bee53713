#include "tablesearch/queryintel/quantity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "tablesearch/error.hpp"
#include "tablesearch/queryintel/text_util.hpp"

namespace tablesearch {

namespace {

constexpr std::string_view kClassifierHeader = "quantity-classifier v1";

double sigmoid(double z)
{
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

std::vector<std::string> split_spaces(std::string_view s)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string part;
    while (in >> part) {
        out.push_back(part);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// QuantityLanguageModel

QuantityLanguageModel::QuantityLanguageModel(const QuantityOntology& ontology)
{
    const auto& tokenizer = ontology.tokenizer();
    auto add_doc = [&](std::string name, const std::string& text, std::span<const std::string> extra) {
        Doc doc;
        doc.name = std::move(name);
        auto terms = tokenizer.terms(text);
        terms.insert(terms.end(), extra.begin(), extra.end());
        for (const auto& t : terms) {
            ++doc.counts[t];
            ++collection_[t];
        }
        doc.length = terms.size();
        collection_length_ += terms.size();
        docs_.push_back(std::move(doc));
    };
    for (const auto& type : ontology.types()) {
        add_doc(type.name, type.description, type.terms);
    }
    add_doc(std::string(QuantityOntology::kDimensionless), ontology.background(), {});
}

std::vector<QuantityLanguageModel::Hit> QuantityLanguageModel::rank(std::span<const std::string> terms) const
{
    std::vector<Hit> hits;
    for (const auto& doc : docs_) {
        bool matched = false;
        double ll = 0.0;
        for (const auto& t : terms) {
            auto in_collection = collection_.find(t);
            if (in_collection == collection_.end()) {
                continue;
            }
            double p = static_cast<double>(in_collection->second) / static_cast<double>(collection_length_);
            auto c = doc.counts.find(t);
            double count = c == doc.counts.end() ? 0.0 : c->second;
            matched = matched || count > 0.0;
            ll += std::log((count + kMu * p) / (static_cast<double>(doc.length) + kMu));
        }
        if (matched) {
            hits.push_back({doc.name, ll});
        }
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        return a.log_likelihood != b.log_likelihood ? a.log_likelihood > b.log_likelihood : a.type < b.type;
    });
    return hits;
}

// ---------------------------------------------------------------------------
// CooccurrenceTable

CooccurrenceTable CooccurrenceTable::build(const Index& index, const QuantityOntology& ontology)
{
    using UnitKey = std::tuple<TableNo, FieldType, std::uint32_t>;
    std::map<UnitKey, std::vector<TermId>> units;
    for (TermId id = 0; id < index.vocabulary_size(); ++id) {
        for (const auto& p : index.postings(id)) {
            units[{p.table, p.field, p.unit}].push_back(id);
        }
    }
    CooccurrenceTable table;
    for (const auto& [key, terms] : units) {
        std::set<std::string> types;
        for (auto id : terms) {
            if (const auto* type = ontology.type_of_term(index.term(id))) {
                types.insert(type->name);
            }
        }
        for (auto id : terms) {
            auto& row = table.rows_[index.term(id)];
            ++row.units;
            for (const auto& type : types) {
                ++row.with_type[type];
            }
        }
    }
    return table;
}

double CooccurrenceTable::rate(const std::string& term, const std::string& type) const
{
    auto row = rows_.find(term);
    if (row == rows_.end() || row->second.units == 0) {
        return 0.0;
    }
    auto hit = row->second.with_type.find(type);
    if (hit == row->second.with_type.end()) {
        return 0.0;
    }
    return static_cast<double>(hit->second) / static_cast<double>(row->second.units);
}

void CooccurrenceTable::write(std::ostream& out) const
{
    out << "cooccurrence " << rows_.size() << '\n';
    for (const auto& [term, row] : rows_) {
        out << term << '\t' << row.units << '\t';
        bool first = true;
        for (const auto& [type, count] : row.with_type) {
            out << (first ? "" : ",") << type << ':' << count;
            first = false;
        }
        out << '\n';
    }
    out << "end\n";
}

CooccurrenceTable CooccurrenceTable::read(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || !line.starts_with("cooccurrence ")) {
        throw FormatError("cooccurrence table: missing 'cooccurrence <rows>' line");
    }
    CooccurrenceTable table;
    while (std::getline(in, line)) {
        if (trim(line) == "end") {
            return table;
        }
        auto cols = split_tsv(line);
        if (cols.size() != 3 || cols[0].empty()) {
            throw FormatError("cooccurrence table: malformed row '" + line + "'");
        }
        Row row;
        row.units = static_cast<std::uint64_t>(parse_double(cols[1], "cooccurrence row"));
        std::string_view rest = cols[2];
        while (!rest.empty()) {
            auto comma = rest.find(',');
            auto item = rest.substr(0, comma);
            auto colon = item.rfind(':');
            if (colon == std::string_view::npos) {
                throw FormatError("cooccurrence table: malformed entry '" + std::string(item) + "'");
            }
            row.with_type[std::string(item.substr(0, colon))] =
                static_cast<std::uint64_t>(parse_double(item.substr(colon + 1), "cooccurrence entry"));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
        table.rows_[std::string(cols[0])] = std::move(row);
    }
    throw FormatError("cooccurrence table: missing 'end'");
}

// ---------------------------------------------------------------------------
// Features

bool name_overlap(std::span<const std::string> concept_terms, const QuantityType& type, const Tokenizer& tokenizer)
{
    auto name_terms = tokenizer.terms(split_camel_case(type.name));
    if (!name_terms.empty() && name_terms.size() <= concept_terms.size()) {
        for (std::size_t i = 0; i + name_terms.size() <= concept_terms.size(); ++i) {
            if (std::equal(name_terms.begin(), name_terms.end(), concept_terms.begin() + static_cast<std::ptrdiff_t>(i))) {
                return true;
            }
        }
    }
    return std::any_of(concept_terms.begin(), concept_terms.end(), [&](const std::string& t) {
        return std::find(type.terms.begin(), type.terms.end(), t) != type.terms.end();
    });
}

QuantityFeatureExtractor::QuantityFeatureExtractor(const QuantityOntology& ontology,
                                                   const CooccurrenceTable& cooccurrence)
    : ontology_(ontology), cooccurrence_(cooccurrence), lm_(ontology)
{}

std::map<std::string, QuantityFeatures> QuantityFeatureExtractor::features(
    std::span<const std::string> concept_terms) const
{
    auto hits = lm_.rank(concept_terms);
    double best = hits.empty() ? 0.0 : hits.front().log_likelihood;
    double mass = 0.0;
    for (const auto& h : hits) {
        mass += std::exp(h.log_likelihood - best);
    }
    std::map<std::string, QuantityFeatures> out;
    for (const auto& type : ontology_.types()) {
        QuantityFeatures f{};
        for (std::size_t r = 0; r < hits.size(); ++r) {
            if (hits[r].type == type.name) {
                f[0] = 1.0 / static_cast<double>(r + 1);
                f[1] = std::exp(hits[r].log_likelihood - best) / mass;
            }
        }
        if (!concept_terms.empty()) {
            double total = 0.0;
            for (const auto& t : concept_terms) {
                total += cooccurrence_.rate(t, type.name);
            }
            f[2] = total / static_cast<double>(concept_terms.size());
        }
        f[3] = name_overlap(concept_terms, type, ontology_.tokenizer()) ? 1.0 : 0.0;
        out.emplace(type.name, f);
    }
    return out;
}

QuantityFeatures QuantityFeatureExtractor::features(std::span<const std::string> concept_terms,
                                                    const QuantityType& type) const
{
    auto all = features(concept_terms);
    auto it = all.find(type.name);
    return it == all.end() ? QuantityFeatures{} : it->second;
}

// ---------------------------------------------------------------------------
// Logistic regression

double LogisticModel::predict(const QuantityFeatures& x) const
{
    double z = bias;
    for (std::size_t k = 0; k < kQuantityFeatureCount; ++k) {
        z += weights[k] * x[k];
    }
    return sigmoid(z);
}

double logistic_loss(const LogisticModel& model, std::span<const QuantityFeatures> x, std::span<const int> y,
                     double l2)
{
    double loss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double z = model.bias;
        for (std::size_t k = 0; k < kQuantityFeatureCount; ++k) {
            z += model.weights[k] * x[i][k];
        }
        // log(1 + e^z) - y z, computed without overflow
        double softplus = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
        loss += softplus - (y[i] != 0 ? z : 0.0);
    }
    loss /= static_cast<double>(std::max<std::size_t>(x.size(), 1));
    for (double w : model.weights) {
        loss += 0.5 * l2 * w * w;
    }
    return loss;
}

std::array<double, kQuantityFeatureCount + 1> logistic_gradient(const LogisticModel& model,
                                                                std::span<const QuantityFeatures> x,
                                                                std::span<const int> y, double l2)
{
    std::array<double, kQuantityFeatureCount + 1> grad{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        double residual = model.predict(x[i]) - (y[i] != 0 ? 1.0 : 0.0);
        for (std::size_t k = 0; k < kQuantityFeatureCount; ++k) {
            grad[k] += residual * x[i][k];
        }
        grad[kQuantityFeatureCount] += residual;
    }
    double n = static_cast<double>(std::max<std::size_t>(x.size(), 1));
    for (auto& g : grad) {
        g /= n;
    }
    for (std::size_t k = 0; k < kQuantityFeatureCount; ++k) {
        grad[k] += l2 * model.weights[k];
    }
    return grad;
}

LogisticModel fit_logistic(std::span<const QuantityFeatures> x, std::span<const int> y, const LogisticOptions& options)
{
    if (x.size() != y.size()) {
        throw TrainingError("feature and label counts differ");
    }
    LogisticModel model;
    double previous = logistic_loss(model, x, y, options.l2);
    for (int it = 0; it < options.max_iterations; ++it) {
        auto grad = logistic_gradient(model, x, y, options.l2);
        for (std::size_t k = 0; k < kQuantityFeatureCount; ++k) {
            model.weights[k] -= options.learning_rate * grad[k];
        }
        model.bias -= options.learning_rate * grad[kQuantityFeatureCount];
        double loss = logistic_loss(model, x, y, options.l2);
        if (std::abs(previous - loss) < options.tolerance) {
            break;
        }
        previous = loss;
    }
    return model;
}

// ---------------------------------------------------------------------------
// QuantityClassifier

QuantityClassifier QuantityClassifier::train(std::span<const UnitPair> pairs,
                                             const QuantityFeatureExtractor& extractor,
                                             CooccurrenceTable cooccurrence, const QuantityTrainingOptions& options)
{
    const auto& ontology = extractor.ontology();
    struct Example {
        std::vector<std::string> terms;
        std::string type;
    };
    std::vector<Example> examples;
    std::map<std::string, std::size_t> per_type;
    for (const auto& pair : pairs) {
        if (ontology.find(pair.type) == nullptr) {
            continue;
        }
        auto terms = ontology.tokenizer().terms(pair.phrase);
        if (terms.empty()) {
            continue;
        }
        ++per_type[pair.type];
        examples.push_back({std::move(terms), pair.type});
    }

    std::vector<std::string> sparse;
    std::set<std::string> kept;
    for (const auto& [type, count] : per_type) {
        if (count < options.min_examples) {
            sparse.push_back(type + " (" + std::to_string(count) + ")");
        } else {
            kept.insert(type);
        }
    }
    if (!sparse.empty() && !options.drop_sparse) {
        std::string list;
        for (const auto& s : sparse) {
            list += (list.empty() ? "" : ", ") + s;
        }
        throw TrainingError("quantity types with fewer than " + std::to_string(options.min_examples) +
                            " examples: " + list);
    }
    if (kept.size() < 2) {
        throw TrainingError("need at least two quantity types with " + std::to_string(options.min_examples) +
                            " or more examples, found " + std::to_string(kept.size()));
    }
    std::erase_if(examples, [&](const Example& e) { return !kept.contains(e.type); });

    std::vector<std::map<std::string, QuantityFeatures>> features;
    features.reserve(examples.size());
    for (const auto& e : examples) {
        features.push_back(extractor.features(e.terms));
    }

    QuantityClassifier classifier;
    classifier.cooccurrence_ = std::move(cooccurrence);
    for (const auto& type : kept) {
        std::vector<QuantityFeatures> x;
        std::vector<int> y;
        for (std::size_t i = 0; i < examples.size(); ++i) {
            x.push_back(features[i].at(type));
            y.push_back(examples[i].type == type ? 1 : 0);
        }
        classifier.models_[type] = fit_logistic(x, y, options.logistic);
    }
    return classifier;
}

std::map<std::string, double> QuantityClassifier::confidences(std::span<const std::string> concept_terms,
                                                              const QuantityFeatureExtractor& extractor) const
{
    auto features = extractor.features(concept_terms);
    std::map<std::string, double> out;
    for (const auto& [type, model] : models_) {
        auto it = features.find(type);
        out[type] = model.predict(it == features.end() ? QuantityFeatures{} : it->second);
    }
    return out;
}

std::optional<std::string> QuantityClassifier::classify(std::span<const std::string> concept_terms,
                                                        const QuantityFeatureExtractor& extractor) const
{
    auto conf = confidences(concept_terms, extractor);
    std::vector<std::pair<std::string, double>> list(conf.begin(), conf.end());
    return pick_quantity(list, threshold_);
}

std::optional<std::string> pick_quantity(std::span<const std::pair<std::string, double>> confidences,
                                         double threshold)
{
    const std::pair<std::string, double>* best = nullptr;
    for (const auto& c : confidences) {
        if (best == nullptr || c.second > best->second || (c.second == best->second && c.first < best->first)) {
            best = &c;
        }
    }
    if (best == nullptr || !(best->second > threshold)) {
        return std::nullopt;
    }
    return best->first;
}

void QuantityClassifier::write(std::ostream& out) const
{
    out << kClassifierHeader << '\n';
    out.precision(17);
    out << "threshold " << threshold_ << '\n';
    for (const auto& [type, model] : models_) {
        out << "type " << type << ' ' << model.bias;
        for (double w : model.weights) {
            out << ' ' << w;
        }
        out << '\n';
    }
    cooccurrence_.write(out);
}

QuantityClassifier QuantityClassifier::read(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || trim(line) != kClassifierHeader) {
        throw FormatError("quantity classifier: missing '" + std::string(kClassifierHeader) + "' header");
    }
    QuantityClassifier classifier;
    bool have_threshold = false;
    while (in.peek() != EOF) {
        auto pos = in.tellg();
        if (!std::getline(in, line)) {
            break;
        }
        if (is_blank_or_comment(line)) {
            continue;
        }
        auto parts = split_spaces(line);
        if (parts.front() == "threshold" && parts.size() == 2) {
            classifier.threshold_ = parse_double(parts[1], "quantity classifier threshold");
            have_threshold = true;
        } else if (parts.front() == "type" && parts.size() == 3 + kQuantityFeatureCount) {
            LogisticModel model;
            model.bias = parse_double(parts[2], "quantity classifier " + parts[1]);
            for (std::size_t k = 0; k < kQuantityFeatureCount; ++k) {
                model.weights[k] = parse_double(parts[3 + k], "quantity classifier " + parts[1]);
            }
            classifier.models_[parts[1]] = model;
        } else if (parts.front() == "cooccurrence") {
            in.seekg(pos);
            classifier.cooccurrence_ = CooccurrenceTable::read(in);
            break;
        } else {
            throw FormatError("quantity classifier: unexpected line '" + line + "'");
        }
    }
    if (!have_threshold) {
        throw FormatError("quantity classifier: missing threshold");
    }
    if (classifier.models_.empty()) {
        throw FormatError("quantity classifier: no type models");
    }
    return classifier;
}

void QuantityClassifier::save(const std::filesystem::path& path) const
{
    std::ofstream out(path);
    if (!out) {
        throw FileError("cannot write quantity classifier " + path.string());
    }
    write(out);
}

QuantityClassifier QuantityClassifier::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open quantity classifier " + path.string());
    }
    return read(in);
}

}  // namespace tablesearch
