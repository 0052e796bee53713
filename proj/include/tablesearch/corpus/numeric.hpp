#pragma once

#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace tablesearch {

/// Decides whether a table cell holds a numeric value: integers, floats,
/// ranges, values with an accuracy, scientific notation, and any of those
/// followed by a short unit token ("1.0-10.0 keV", "45%").
///
/// LaTeX residue commonly found in converted cells ("$\pm$", "\times",
/// braces) is normalized away before matching.
class NumericMatcher {
public:
    NumericMatcher();

    [[nodiscard]] bool matches(std::string_view text) const { return match_name(text).has_value(); }

    /// Name of the first pattern that accepts the text.
    [[nodiscard]] std::optional<std::string> match_name(std::string_view text) const;

    /// Longest unit suffix accepted after a numeric value, in characters.
    static constexpr std::size_t kMaxUnitLength = 12;

private:
    struct Pattern {
        std::string name;
        std::regex regex;
    };

    [[nodiscard]] std::optional<std::string> match_core(const std::string& text) const;

    std::vector<Pattern> patterns_;
};

/// Shared default matcher.
const NumericMatcher& default_numeric_matcher();

bool is_numeric_cell(std::string_view text, const NumericMatcher& matcher = default_numeric_matcher());

/// Trim, drop '$' and braces, map \pm, +/- to '±' and \times to '×', and
/// collapse whitespace.
std::string normalize_cell_text(std::string_view text);

}  // namespace tablesearch
