#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tablesearch/corpus/numeric.hpp"
#include "tablesearch/corpus/table_record.hpp"

namespace tablesearch {

struct XmlParseResult {
    std::vector<TableRecord> tables;
    /// Unknown or misplaced elements that were skipped.
    std::vector<std::string> warnings;
};

/// Parse every <table> element of an XML document.
///
/// Tables without an id attribute are named "<doc_id>#<ordinal>". The doc id
/// comes from an enclosing <document id=...> element when present, else from
/// default_doc_id. Throws XmlParseError (with the byte offset) on malformed
/// XML.
XmlParseResult parse_table_xml(std::string_view document, std::string_view default_doc_id,
                               const NumericMatcher& matcher = default_numeric_matcher());

/// Reads a file; the default doc id is the file stem.
XmlParseResult parse_table_xml_file(const std::filesystem::path& path,
                                    const NumericMatcher& matcher = default_numeric_matcher());

/// Render a record in the same element vocabulary (one <table> element).
std::string to_table_xml(const TableRecord& record);

/// Collapse whitespace runs to one space and trim.
std::string normalize_whitespace(std::string_view text);

}  // namespace tablesearch
