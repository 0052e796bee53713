#include "tablesearch/corpus/record_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "tablesearch/error.hpp"

namespace tablesearch {

using nlohmann::json;

std::string record_to_json_line(const TableRecord& record)
{
    json fields = json::object();
    for (auto f : kAllFields) {
        fields[std::string(field_name(f))] = record.units(f);
    }
    json j = {
        {"table_id", record.table_id},
        {"doc_id", record.doc_id},
        {"fields", std::move(fields)},
        {"numeric_cell_count", record.numeric_cell_count},
        {"total_cell_count", record.total_cell_count},
    };
    return j.dump();
}

TableRecord record_from_json_line(const std::string& line)
{
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("record is not valid JSON: ") + e.what());
    }
    TableRecord record;
    try {
        record.table_id = j.at("table_id").get<std::string>();
        record.doc_id = j.at("doc_id").get<std::string>();
        const auto& fields = j.at("fields");
        for (auto f : kAllFields) {
            record.units(f) = fields.at(std::string(field_name(f))).get<std::vector<std::string>>();
        }
        if (fields.size() != kFieldCount) {
            throw FormatError("record " + record.table_id + " has unknown field keys");
        }
        record.numeric_cell_count = j.at("numeric_cell_count").get<std::size_t>();
        record.total_cell_count = j.at("total_cell_count").get<std::size_t>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed record: ") + e.what());
    }
    check_invariants(record);
    return record;
}

void write_records(std::ostream& out, std::span<const TableRecord> records)
{
    for (const auto& record : records) {
        out << record_to_json_line(record) << '\n';
    }
}

std::vector<TableRecord> read_records(std::istream& in)
{
    std::vector<TableRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            records.push_back(record_from_json_line(line));
        } catch (const FormatError& e) {
            throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

void write_records_file(const std::filesystem::path& path, std::span<const TableRecord> records)
{
    std::ofstream out(path);
    if (!out) {
        throw FileError("cannot write " + path.string());
    }
    write_records(out, records);
}

std::vector<TableRecord> read_records_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open " + path.string());
    }
    return read_records(in);
}

}  // namespace tablesearch
