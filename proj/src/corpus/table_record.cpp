#include "tablesearch/corpus/table_record.hpp"

#include <algorithm>
#include <string>

#include "tablesearch/corpus/numeric.hpp"
#include "tablesearch/error.hpp"

namespace tablesearch {

void recount_cells(TableRecord& record, const NumericMatcher& matcher)
{
    const auto& cells = record.units(FieldType::cell_value);
    record.total_cell_count = cells.size();
    record.numeric_cell_count = static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [&](const std::string& c) { return matcher.matches(c); }));
}

void check_invariants(const TableRecord& record)
{
    if (record.total_cell_count != record.units(FieldType::cell_value).size()) {
        throw FormatError("table " + record.table_id + ": total_cell_count " +
                          std::to_string(record.total_cell_count) + " does not match " +
                          std::to_string(record.units(FieldType::cell_value).size()) + " cell values");
    }
    if (record.numeric_cell_count > record.total_cell_count) {
        throw FormatError("table " + record.table_id + ": numeric_cell_count exceeds total_cell_count");
    }
}

double numeric_fraction(const TableRecord& record)
{
    if (record.total_cell_count == 0) {
        return 0.0;
    }
    return static_cast<double>(record.numeric_cell_count) / static_cast<double>(record.total_cell_count);
}

}  // namespace tablesearch
