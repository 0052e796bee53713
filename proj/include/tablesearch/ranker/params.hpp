#pragma once

#include <vector>

#include "tablesearch/corpus/field_type.hpp"

namespace tablesearch {

/// Two-stage smoothing: Jelinek-Mercer weight lambda over a Dirichlet prior mu.
struct SmoothingParams {
    double lambda = 0.81;
    double mu = 2.0;

    bool operator==(const SmoothingParams&) const = default;
};

/// Tuned for whole tables treated as one document.
inline constexpr SmoothingParams kFullTextSmoothing{0.58, 250.0};
/// Tuned for individual field language models.
inline constexpr SmoothingParams kFieldedSmoothing{0.81, 2.0};

/// Belief weights of the sequential dependence model: unigrams, ordered
/// bigrams (#1), unordered bigram windows (#uw8).
struct SdmWeights {
    double unigram = 0.85;
    double ordered = 0.10;
    double unordered = 0.05;

    bool operator==(const SdmWeights&) const = default;
};

struct FieldWeight {
    FieldScope scope;
    double weight = 0.0;

    bool operator==(const FieldWeight&) const = default;
};

/// Which collection model p(w|C) smooths a field: the model of that field
/// type, or the whole corpus.
enum class CorpusModel { per_field, global };

std::vector<FieldWeight> default_field_weights();
/// Degenerate distribution on the whole-table pseudo-field.
std::vector<FieldWeight> union_field_weights();

struct ModelParams {
    std::vector<FieldWeight> field_weights = default_field_weights();
    double alpha = 0.2;  ///< weight of the concept component
    double beta = 0.1;   ///< weight of the quantity component
    SdmWeights sdm;
    bool prior_enabled = true;
    SmoothingParams fulltext = kFullTextSmoothing;
    SmoothingParams fielded = kFieldedSmoothing;
    CorpusModel corpus_model = CorpusModel::per_field;
    unsigned window_width = 8;

    /// Smoothing used for a leaf matched against the given scope.
    [[nodiscard]] const SmoothingParams& smoothing_for(FieldScope scope) const
    {
        return scope.is_whole() ? fulltext : fielded;
    }

    /// Scopes that concepts and quantities are matched against (#max).
    [[nodiscard]] std::vector<FieldScope> match_fields() const;

    /// Throws std::invalid_argument when a constraint is violated.
    void validate() const;
};

}  // namespace tablesearch
