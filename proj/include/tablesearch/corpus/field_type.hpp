#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace tablesearch {

/// The eight text containers a table is described by, grouped into three
/// levels of detail.
enum class FieldType : std::uint8_t {
    article_title,
    abstract,
    caption,
    referring_sentence,
    footnote,
    row_header,
    column_header,
    cell_value,
};

enum class FieldLevel : std::uint8_t { document, table, cell };

inline constexpr std::size_t kFieldCount = 8;

inline constexpr std::array<FieldType, kFieldCount> kAllFields = {
    FieldType::article_title, FieldType::abstract,          FieldType::caption,
    FieldType::referring_sentence, FieldType::footnote,     FieldType::row_header,
    FieldType::column_header, FieldType::cell_value,
};

constexpr std::size_t field_index(FieldType f) { return static_cast<std::size_t>(f); }

constexpr FieldLevel level_of(FieldType f)
{
    switch (f) {
    case FieldType::article_title:
    case FieldType::abstract: return FieldLevel::document;
    case FieldType::caption:
    case FieldType::referring_sentence:
    case FieldType::footnote: return FieldLevel::table;
    default: return FieldLevel::cell;
    }
}

std::string_view field_name(FieldType f);
std::optional<FieldType> field_from_name(std::string_view name);

/// Where a query leaf is matched: one field type, or the whole table as a
/// single bag of words (the union of all eight fields).
class FieldScope {
public:
    constexpr FieldScope() = default;
    constexpr FieldScope(FieldType f) : value_(static_cast<std::uint8_t>(f)) {}  // NOLINT

    static constexpr FieldScope whole_table() { return FieldScope{}; }

    [[nodiscard]] constexpr bool is_whole() const { return value_ == kWhole; }
    /// Precondition: !is_whole().
    [[nodiscard]] constexpr FieldType field() const { return static_cast<FieldType>(value_); }

    /// Field name, or "all" for the whole table.
    [[nodiscard]] std::string_view name() const;
    static std::optional<FieldScope> from_name(std::string_view name);

    constexpr bool operator==(const FieldScope&) const = default;
    constexpr auto operator<=>(const FieldScope&) const = default;

private:
    static constexpr std::uint8_t kWhole = kFieldCount;
    std::uint8_t value_ = kWhole;
};

}  // namespace tablesearch
