#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tablesearch {

/// Helpers shared by the plain-text resource readers.

std::vector<std::string_view> split_tsv(std::string_view line);
bool is_blank_or_comment(std::string_view line);
std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
/// Throws FormatError mentioning the context when the text is not a number.
double parse_double(std::string_view text, const std::string& context);

}  // namespace tablesearch
