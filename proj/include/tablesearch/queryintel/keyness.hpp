#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "tablesearch/index/index.hpp"

namespace tablesearch {

/// Fields that describe a table in words: every field type except cell_value.
inline constexpr std::size_t kKeynessFieldCount = 7;
inline constexpr std::size_t kKeynessFeatureCount = 2 * kKeynessFieldCount;

/// Layout: for each non-cell field type in declaration order, (ctf, idf).
/// idf = ln(1 + N / df), 0 when df = 0.
using KeynessFeatures = std::array<double, kKeynessFeatureCount>;

/// Collection statistics of a phrase as an exact term sequence. When the
/// sequence never occurs in those fields and has three or more terms, the
/// features are the mean over its consecutive two-term sub-sequences.
KeynessFeatures keyness_features(std::span<const std::string> phrase_terms, const Index& index);

/// Exact-sequence features without the sub-sequence fallback.
KeynessFeatures exact_keyness_features(std::span<const std::string> phrase_terms, const Index& index);

/// h(c) = exp(w . x + b).
struct KeynessModel {
    KeynessFeatures weights{};
    double bias = 0.0;

    [[nodiscard]] double score(const KeynessFeatures& features) const;

    /// "keyness-model v1" header, then "bias <b>" and one "<feature> <w>" line
    /// per feature. Throws FormatError / FileError.
    static KeynessModel read(std::istream& in);
    static KeynessModel load(const std::filesystem::path& path);
    void write(std::ostream& out) const;
};

/// Unsupervised fallback: mean idf over the seven fields.
double mean_idf_keyness(const KeynessFeatures& features);

/// Name of feature i, e.g. "caption.idf".
std::string keyness_feature_name(std::size_t i);

}  // namespace tablesearch
