#include "tablesearch/ranker/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tablesearch {

std::vector<FieldWeight> default_field_weights()
{
    return {
        {FieldType::article_title, 0.15}, {FieldType::abstract, 0.10},      {FieldType::caption, 0.25},
        {FieldType::referring_sentence, 0.15}, {FieldType::footnote, 0.05}, {FieldType::row_header, 0.12},
        {FieldType::column_header, 0.12}, {FieldType::cell_value, 0.06},
    };
}

std::vector<FieldWeight> union_field_weights() { return {{FieldScope::whole_table(), 1.0}}; }

std::vector<FieldScope> ModelParams::match_fields() const
{
    std::vector<FieldScope> fields;
    for (const auto& fw : field_weights) {
        fields.push_back(fw.scope);
    }
    return fields;
}

void ModelParams::validate() const
{
    auto check_smoothing = [](const SmoothingParams& s, const char* name) {
        if (!(s.lambda >= 0.0 && s.lambda <= 1.0)) {
            throw std::invalid_argument(std::string(name) + " lambda must lie in [0, 1]");
        }
        if (!(s.mu >= 0.0)) {
            throw std::invalid_argument(std::string(name) + " mu must be non-negative");
        }
    };
    check_smoothing(fulltext, "fulltext");
    check_smoothing(fielded, "fielded");

    if (field_weights.empty()) {
        throw std::invalid_argument("field weights are empty");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < field_weights.size(); ++i) {
        if (!(field_weights[i].weight >= 0.0)) {
            throw std::invalid_argument("field weights must be non-negative");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (field_weights[j].scope == field_weights[i].scope) {
                throw std::invalid_argument("field " + std::string(field_weights[i].scope.name()) + " listed twice");
            }
        }
        total += field_weights[i].weight;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("field weights must sum to 1 (got " + std::to_string(total) + ")");
    }
    if (!(alpha >= 0.0 && beta >= 0.0 && alpha + beta <= 1.0 + 1e-12)) {
        throw std::invalid_argument("alpha and beta must be non-negative with alpha + beta <= 1");
    }
    if (!(sdm.unigram >= 0.0 && sdm.ordered >= 0.0 && sdm.unordered >= 0.0) ||
        std::abs(sdm.unigram + sdm.ordered + sdm.unordered - 1.0) > 1e-9) {
        throw std::invalid_argument("SDM weights must be non-negative and sum to 1");
    }
    if (window_width < 2) {
        throw std::invalid_argument("unordered window width must be at least 2");
    }
}

}  // namespace tablesearch
