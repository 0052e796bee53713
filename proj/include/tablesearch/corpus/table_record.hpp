#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "tablesearch/corpus/field_type.hpp"

namespace tablesearch {

class NumericMatcher;

/// One retrievable table. Each field holds its text units in document order:
/// one string per title, sentence, footnote, header or cell.
struct TableRecord {
    std::string table_id;
    std::string doc_id;
    std::array<std::vector<std::string>, kFieldCount> fields;
    std::size_t numeric_cell_count = 0;
    std::size_t total_cell_count = 0;

    [[nodiscard]] const std::vector<std::string>& units(FieldType f) const
    {
        return fields[field_index(f)];
    }
    std::vector<std::string>& units(FieldType f) { return fields[field_index(f)]; }

    bool operator==(const TableRecord&) const = default;
};

/// Recount numeric_cell_count / total_cell_count from the cell_value units.
void recount_cells(TableRecord& record, const NumericMatcher& matcher);

/// Throws FormatError when the cell counters disagree with the cell units.
void check_invariants(const TableRecord& record);

/// Fraction of cell values that are numeric; 0 for a table without cells.
double numeric_fraction(const TableRecord& record);

}  // namespace tablesearch
