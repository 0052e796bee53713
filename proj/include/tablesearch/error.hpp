#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tablesearch {

/// Malformed input in one of the on-disk formats (records, qrels, runs, ...).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class XmlParseError : public FormatError {
public:
    XmlParseError(const std::string& message, std::size_t offset)
        : FormatError(message + " at byte " + std::to_string(offset)), offset_(offset)
    {}

    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Two records share a table id.
class DuplicateTableError : public std::invalid_argument {
public:
    explicit DuplicateTableError(const std::string& table_id)
        : std::invalid_argument("duplicate table id: " + table_id), table_id_(table_id)
    {}

    [[nodiscard]] const std::string& table_id() const noexcept { return table_id_; }

private:
    std::string table_id_;
};

/// A query that cannot be built or evaluated (empty query, zero-child operator).
class QueryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A required input file is missing or unreadable.
class FileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TrainingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tablesearch
