#include "tablesearch/queryintel/keyness.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "tablesearch/error.hpp"
#include "tablesearch/index/window.hpp"
#include "tablesearch/queryintel/text_util.hpp"

namespace tablesearch {

namespace {

constexpr std::string_view kKeynessHeader = "keyness-model v1";

}  // namespace

KeynessFeatures exact_keyness_features(std::span<const std::string> phrase_terms, const Index& index)
{
    KeynessFeatures features{};
    if (phrase_terms.empty()) {
        return features;
    }
    const auto n = static_cast<double>(index.table_count());
    for (std::size_t i = 0; i < kKeynessFieldCount; ++i) {
        auto field = kAllFields[i];
        TermStats stats;
        if (phrase_terms.size() == 1) {
            if (auto id = index.term_id(phrase_terms.front())) {
                stats = index.stats().term(*id, field);
            }
        } else {
            stats = window_collection_stats(index, phrase_terms, field, WindowSpec::ordered());
        }
        features[2 * i] = static_cast<double>(stats.ctf);
        features[2 * i + 1] = stats.df == 0 ? 0.0 : std::log(1.0 + n / static_cast<double>(stats.df));
    }
    return features;
}

KeynessFeatures keyness_features(std::span<const std::string> phrase_terms, const Index& index)
{
    auto features = exact_keyness_features(phrase_terms, index);
    bool matched = false;
    for (std::size_t i = 0; i < kKeynessFieldCount; ++i) {
        matched = matched || features[2 * i] > 0.0;
    }
    if (matched || phrase_terms.size() < 3) {
        return features;
    }
    KeynessFeatures mean{};
    const std::size_t bigrams = phrase_terms.size() - 1;
    for (std::size_t b = 0; b < bigrams; ++b) {
        auto part = exact_keyness_features(phrase_terms.subspan(b, 2), index);
        for (std::size_t k = 0; k < kKeynessFeatureCount; ++k) {
            mean[k] += part[k] / static_cast<double>(bigrams);
        }
    }
    return mean;
}

double mean_idf_keyness(const KeynessFeatures& features)
{
    double total = 0.0;
    for (std::size_t i = 0; i < kKeynessFieldCount; ++i) {
        total += features[2 * i + 1];
    }
    return total / static_cast<double>(kKeynessFieldCount);
}

std::string keyness_feature_name(std::size_t i)
{
    return std::string(field_name(kAllFields[i / 2])) + (i % 2 == 0 ? ".ctf" : ".idf");
}

double KeynessModel::score(const KeynessFeatures& features) const
{
    double z = bias;
    for (std::size_t k = 0; k < kKeynessFeatureCount; ++k) {
        z += weights[k] * features[k];
    }
    return std::exp(z);
}

KeynessModel KeynessModel::read(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || trim(line) != kKeynessHeader) {
        throw FormatError("keyness model: missing '" + std::string(kKeynessHeader) + "' header");
    }
    KeynessModel model;
    std::array<bool, kKeynessFeatureCount> seen{};
    bool bias_seen = false;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) {
            continue;
        }
        auto t = trim(line);
        auto space = t.find(' ');
        if (space == std::string_view::npos) {
            throw FormatError("keyness model line " + std::to_string(line_no) + ": expected '<name> <value>'");
        }
        auto name = t.substr(0, space);
        double value = parse_double(t.substr(space + 1), "keyness model line " + std::to_string(line_no));
        if (name == "bias") {
            model.bias = value;
            bias_seen = true;
            continue;
        }
        bool known = false;
        for (std::size_t k = 0; k < kKeynessFeatureCount; ++k) {
            if (keyness_feature_name(k) == name) {
                model.weights[k] = value;
                seen[k] = true;
                known = true;
            }
        }
        if (!known) {
            throw FormatError("keyness model line " + std::to_string(line_no) + ": unknown feature '" +
                              std::string(name) + "'");
        }
    }
    for (std::size_t k = 0; k < kKeynessFeatureCount; ++k) {
        if (!seen[k]) {
            throw FormatError("keyness model: missing weight for " + keyness_feature_name(k));
        }
    }
    if (!bias_seen) {
        throw FormatError("keyness model: missing bias");
    }
    return model;
}

KeynessModel KeynessModel::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open keyness model " + path.string());
    }
    return read(in);
}

void KeynessModel::write(std::ostream& out) const
{
    out << kKeynessHeader << '\n';
    out.precision(17);
    out << "bias " << bias << '\n';
    for (std::size_t k = 0; k < kKeynessFeatureCount; ++k) {
        out << keyness_feature_name(k) << ' ' << weights[k] << '\n';
    }
}

}  // namespace tablesearch
