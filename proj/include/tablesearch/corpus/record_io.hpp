#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tablesearch/corpus/table_record.hpp"

namespace tablesearch {

/// One record as a single JSON line (no trailing newline).
std::string record_to_json_line(const TableRecord& record);

/// Inverse of record_to_json_line. Every field key must be present; counters
/// are checked against the cell values. Throws FormatError.
TableRecord record_from_json_line(const std::string& line);

void write_records(std::ostream& out, std::span<const TableRecord> records);
std::vector<TableRecord> read_records(std::istream& in);

void write_records_file(const std::filesystem::path& path, std::span<const TableRecord> records);
std::vector<TableRecord> read_records_file(const std::filesystem::path& path);

}  // namespace tablesearch
