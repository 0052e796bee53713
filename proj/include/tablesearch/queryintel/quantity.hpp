#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tablesearch/index/index.hpp"
#include "tablesearch/queryintel/ontology.hpp"
#include "tablesearch/queryintel/unit_miner.hpp"

namespace tablesearch {

/// Query-likelihood ranking of quantity types: each type is a pseudo-document
/// of its description and unit symbols, next to a dimensionless background
/// document. Dirichlet smoothing against the union of all pseudo-documents.
class QuantityLanguageModel {
public:
    static constexpr double kMu = 50.0;

    explicit QuantityLanguageModel(const QuantityOntology& ontology);

    struct Hit {
        std::string type;  ///< type name, or "dimensionless"
        double log_likelihood = 0.0;
    };

    /// Pseudo-documents containing at least one query term, best first; ties
    /// by name. Query terms unknown to every pseudo-document are ignored.
    [[nodiscard]] std::vector<Hit> rank(std::span<const std::string> terms) const;

private:
    struct Doc {
        std::string name;
        std::map<std::string, std::uint32_t> counts;
        std::uint64_t length = 0;
    };
    std::vector<Doc> docs_;
    std::map<std::string, std::uint64_t> collection_;
    std::uint64_t collection_length_ = 0;
};

/// Per index term: how many text units hold it, and how many of those also
/// hold a unit symbol of each quantity type.
class CooccurrenceTable {
public:
    static CooccurrenceTable build(const Index& index, const QuantityOntology& ontology);

    /// Fraction of the term's text units that also hold a unit of the type;
    /// 0 for an unseen term.
    [[nodiscard]] double rate(const std::string& term, const std::string& type) const;

    void write(std::ostream& out) const;
    /// Reads what write() produced, up to a line "end".
    static CooccurrenceTable read(std::istream& in);

    bool operator==(const CooccurrenceTable&) const = default;

private:
    struct Row {
        std::uint64_t units = 0;
        std::map<std::string, std::uint64_t> with_type;

        bool operator==(const Row&) const = default;
    };
    std::map<std::string, Row> rows_;
};

inline constexpr std::size_t kQuantityFeatureCount = 4;
/// (reciprocal LM rank, LM score share, cooccurrence rate, name overlap).
using QuantityFeatures = std::array<double, kQuantityFeatureCount>;

class QuantityFeatureExtractor {
public:
    QuantityFeatureExtractor(const QuantityOntology& ontology, const CooccurrenceTable& cooccurrence);

    /// Features of a concept for every ontology type, in ontology order.
    [[nodiscard]] std::map<std::string, QuantityFeatures> features(std::span<const std::string> concept_terms) const;
    [[nodiscard]] QuantityFeatures features(std::span<const std::string> concept_terms, const QuantityType& type) const;

    [[nodiscard]] const QuantityOntology& ontology() const { return ontology_; }

private:
    const QuantityOntology& ontology_;
    const CooccurrenceTable& cooccurrence_;
    QuantityLanguageModel lm_;
};

/// True when every word of the type name appears in order in the concept, or
/// the concept holds one of its unit symbols.
bool name_overlap(std::span<const std::string> concept_terms, const QuantityType& type, const Tokenizer& tokenizer);

struct LogisticModel {
    QuantityFeatures weights{};
    double bias = 0.0;

    [[nodiscard]] double predict(const QuantityFeatures& x) const;

    bool operator==(const LogisticModel&) const = default;
};

struct LogisticOptions {
    double learning_rate = 0.5;
    double l2 = 1e-3;
    double tolerance = 1e-6;
    int max_iterations = 10000;
};

/// Mean cross-entropy plus (l2 / 2) |w|^2; the bias is not penalized.
double logistic_loss(const LogisticModel& model, std::span<const QuantityFeatures> x, std::span<const int> y,
                     double l2);
/// Gradient of logistic_loss: weights first, bias last.
std::array<double, kQuantityFeatureCount + 1> logistic_gradient(const LogisticModel& model,
                                                                std::span<const QuantityFeatures> x,
                                                                std::span<const int> y, double l2);
/// Full-batch gradient descent from zero until the loss changes by less than
/// the tolerance.
LogisticModel fit_logistic(std::span<const QuantityFeatures> x, std::span<const int> y, const LogisticOptions& options);

struct QuantityTrainingOptions {
    LogisticOptions logistic;
    std::size_t min_examples = 5;
    /// Skip types with too few examples instead of failing.
    bool drop_sparse = false;
};

/// One-vs-all logistic classifiers, one per quantity type seen in training.
class QuantityClassifier {
public:
    static constexpr double kDefaultThreshold = 0.65;

    /// Types missing from the pairs are discarded. Throws TrainingError
    /// listing the types with fewer than min_examples pairs (unless
    /// drop_sparse) or when fewer than two types remain.
    static QuantityClassifier train(std::span<const UnitPair> pairs, const QuantityFeatureExtractor& extractor,
                                    CooccurrenceTable cooccurrence, const QuantityTrainingOptions& options = {});

    /// Confidence per type, in type-name order.
    [[nodiscard]] std::map<std::string, double> confidences(std::span<const std::string> concept_terms,
                                                            const QuantityFeatureExtractor& extractor) const;
    /// Most confident type when above the threshold, nullopt for dimensionless.
    /// Ties go to the smaller type name.
    [[nodiscard]] std::optional<std::string> classify(std::span<const std::string> concept_terms,
                                                      const QuantityFeatureExtractor& extractor) const;

    [[nodiscard]] const std::map<std::string, LogisticModel>& models() const { return models_; }
    void set_model(const std::string& type, LogisticModel model) { models_[type] = model; }
    [[nodiscard]] double threshold() const { return threshold_; }
    void set_threshold(double threshold) { threshold_ = threshold; }
    [[nodiscard]] const CooccurrenceTable& cooccurrence() const { return cooccurrence_; }

    /// Versioned plain text: header, threshold, one weight line per type,
    /// then the cooccurrence table.
    void write(std::ostream& out) const;
    static QuantityClassifier read(std::istream& in);
    void save(const std::filesystem::path& path) const;
    static QuantityClassifier load(const std::filesystem::path& path);

private:
    double threshold_ = kDefaultThreshold;
    std::map<std::string, LogisticModel> models_;
    CooccurrenceTable cooccurrence_;
};

/// Argmax of the confidences if it exceeds the threshold; ties go to the
/// smaller type name, so the order of the candidates never matters.
std::optional<std::string> pick_quantity(std::span<const std::pair<std::string, double>> confidences,
                                         double threshold);

}  // namespace tablesearch
