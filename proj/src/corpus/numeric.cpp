#include "tablesearch/corpus/numeric.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace tablesearch {

namespace {

// Building blocks for the numeric patterns. Multi-byte symbols only ever
// appear in alternations, never inside character classes.
const std::string kUnsigned = R"((?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d*)?|\.\d+)";
const std::string kSigned = "[+-]?(?:" + kUnsigned + ")";
const std::string kExponent = R"((?:[eE][+-]?\d+))";
const std::string kTimesTen = R"((?:\s*(?:×|x|\*)\s*10\^\(?[+-]?\d+\)?))";
const std::string kValue = "(?:" + kSigned + ")(?:" + kExponent + "|" + kTimesTen + ")?";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

void replace_all(std::string& s, std::string_view from, std::string_view to)
{
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
}

std::size_t utf8_length(std::string_view s)
{
    std::size_t n = 0;
    for (char c : s) {
        if ((static_cast<unsigned char>(c) & 0xC0U) != 0x80U) {
            ++n;
        }
    }
    return n;
}

bool looks_like_unit(std::string_view tail)
{
    if (tail.empty() || utf8_length(tail) > NumericMatcher::kMaxUnitLength) {
        return false;
    }
    if (std::isdigit(static_cast<unsigned char>(tail.front())) != 0) {
        return false;
    }
    bool has_symbol = false;
    for (std::size_t i = 0; i < tail.size(); ++i) {
        auto c = static_cast<unsigned char>(tail[i]);
        if (is_space(tail[i])) {
            return false;
        }
        if (std::isalpha(c) != 0 || c == '%' || c >= 0x80U) {
            has_symbol = true;
        }
    }
    return has_symbol;
}

}  // namespace

std::string normalize_cell_text(std::string_view text)
{
    std::string s(text);
    static const std::array<std::pair<std::string_view, std::string_view>, 12> kReplacements = {{
        {"\\pm", "±"},
        {"+/-", "±"},
        {"+-", "±"},
        {"\\times", "×"},
        {"\\cdot", "×"},
        {"\\%", "%"},
        {"\\mu", "μ"},
        {"^\\circ", "°"},
        {"\\sim", "≈"},
        {"\\,", " "},
        {"−", "-"},
        {"~", " "},
    }};
    for (const auto& [from, to] : kReplacements) {
        replace_all(s, from, to);
    }

    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '$' || c == '{' || c == '}') {
            continue;
        }
        if (c == '\\') {
            // Unmapped LaTeX command: drop the command name.
            while (i + 1 < s.size() && std::isalpha(static_cast<unsigned char>(s[i + 1])) != 0) {
                ++i;
            }
            continue;
        }
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

NumericMatcher::NumericMatcher()
{
    auto add = [this](std::string name, const std::string& body) {
        patterns_.push_back({std::move(name), std::regex("^(?:" + body + ")$", std::regex::ECMAScript)});
    };
    add("integer", R"([+-]?(?:\d{1,3}(?:,\d{3})+|\d+))");
    add("float", R"(\d+\.\d*|\.\d+)");
    add("signed_float", R"([+-](?:\d+\.\d*|\.\d+))");
    add("scientific", kSigned + "(?:" + kExponent + "|" + kTimesTen + ")" + R"(|10\^\(?[+-]?\d+\)?)");
    add("range", kValue + R"(\s*(?:-|–|—|to)\s*)" + kValue);
    add("value_with_accuracy",
        R"(\(?)" + kValue + R"(\s*±\s*)" + kValue + R"(\)?)" + kTimesTen + "?" +
            "|" + kValue + R"(\s*\^\s*)" + kValue + R"(\s*_\s*)" + kValue +
            "|" + kValue + R"(\s*_\s*)" + kValue + R"(\s*\^\s*)" + kValue +
            "|" + kValue + R"(\(\d+\))");
    add("bound", R"((?:<|>|≤|≥|≲|≳|≈|~)\s*)" + kValue);
}

std::optional<std::string> NumericMatcher::match_core(const std::string& text) const
{
    for (const auto& pattern : patterns_) {
        if (std::regex_match(text, pattern.regex)) {
            return pattern.name;
        }
    }
    return std::nullopt;
}

std::optional<std::string> NumericMatcher::match_name(std::string_view text) const
{
    std::string s = normalize_cell_text(text);
    if (s.empty()) {
        return std::nullopt;
    }
    if (auto name = match_core(s)) {
        return name;
    }

    // value followed by a unit: "1.0-10.0 keV", "0.16 ± 0.01 keV"
    if (auto space = s.rfind(' '); space != std::string::npos) {
        std::string head = s.substr(0, space);
        if (looks_like_unit(std::string_view(s).substr(space + 1)) && match_core(head)) {
            return "value_with_unit";
        }
        return std::nullopt;
    }
    // glued unit: "10keV", "45%"
    for (std::size_t i = 1; i < s.size(); ++i) {
        auto prev = static_cast<unsigned char>(s[i - 1]);
        if (std::isdigit(prev) == 0 && prev != ')') {
            continue;
        }
        auto tail = std::string_view(s).substr(i);
        if (std::isdigit(static_cast<unsigned char>(s[i])) != 0 || s[i] == '.' || !looks_like_unit(tail)) {
            continue;
        }
        if (match_core(s.substr(0, i))) {
            return "value_with_unit";
        }
    }
    return std::nullopt;
}

const NumericMatcher& default_numeric_matcher()
{
    static const NumericMatcher matcher;
    return matcher;
}

bool is_numeric_cell(std::string_view text, const NumericMatcher& matcher)
{
    return matcher.matches(text);
}

}  // namespace tablesearch
