#include "tablesearch/corpus/field_type.hpp"

namespace tablesearch {

namespace {

constexpr std::array<std::string_view, kFieldCount> kFieldNames = {
    "article_title", "abstract",   "caption",       "referring_sentence",
    "footnote",      "row_header", "column_header", "cell_value",
};

}  // namespace

std::string_view field_name(FieldType f) { return kFieldNames[field_index(f)]; }

std::optional<FieldType> field_from_name(std::string_view name)
{
    for (std::size_t i = 0; i < kFieldCount; ++i) {
        if (kFieldNames[i] == name) {
            return kAllFields[i];
        }
    }
    return std::nullopt;
}

std::string_view FieldScope::name() const { return is_whole() ? std::string_view("all") : field_name(field()); }

std::optional<FieldScope> FieldScope::from_name(std::string_view name)
{
    if (name == "all") {
        return whole_table();
    }
    if (auto f = field_from_name(name)) {
        return FieldScope(*f);
    }
    return std::nullopt;
}

}  // namespace tablesearch
