#include "tablesearch/corpus/xml_reader.hpp"

#include <expat.h>

#include <cctype>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "tablesearch/error.hpp"

namespace tablesearch {

namespace {

std::string canonical_tag(std::string_view name)
{
    std::string tag(name);
    for (char& c : tag) {
        if (c == '_') {
            c = '-';
        }
    }
    return tag;
}

std::optional<FieldType> leaf_field(std::string_view tag)
{
    if (tag == "article-title") return FieldType::article_title;
    if (tag == "abstract") return FieldType::abstract;
    if (tag == "caption") return FieldType::caption;
    if (tag == "sentence") return FieldType::referring_sentence;
    if (tag == "footnote") return FieldType::footnote;
    if (tag == "row-header") return FieldType::row_header;
    if (tag == "column-header") return FieldType::column_header;
    if (tag == "cell-value") return FieldType::cell_value;
    return std::nullopt;
}

bool is_field_wrapper(std::string_view tag)
{
    return tag == "referring-sentences" || tag == "footnotes" || tag == "row-headers" ||
           tag == "column-headers" || tag == "cell-values";
}

bool is_document_wrapper(std::string_view tag)
{
    return tag == "document" || tag == "article" || tag == "doc" || tag == "tables";
}

const char* attribute(const XML_Char** attrs, std::string_view name)
{
    for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
        if (name == attrs[i]) {
            return attrs[i + 1];
        }
    }
    return nullptr;
}

struct ParserState {
    XML_Parser parser = nullptr;
    const NumericMatcher* matcher = nullptr;
    XmlParseResult result;

    std::string default_doc_id;
    std::vector<std::string> doc_ids;  // stack from <document id=...>
    std::size_t ordinal = 0;

    std::optional<TableRecord> table;
    std::optional<FieldType> leaf;
    std::string text;
    int leaf_depth = 0;     // elements nested inside the current leaf
    int skip_depth = 0;     // >0 while inside a skipped subtree

    void warn(const std::string& message)
    {
        result.warnings.push_back(message + " at byte " + std::to_string(XML_GetCurrentByteIndex(parser)));
    }

    const std::string& doc_id() const { return doc_ids.empty() ? default_doc_id : doc_ids.back(); }

    void start(const XML_Char* raw_name, const XML_Char** attrs)
    {
        if (skip_depth > 0) {
            ++skip_depth;
            return;
        }
        std::string tag = canonical_tag(raw_name);
        if (leaf) {
            // inline markup inside a text unit: keep its text
            warn("unknown element <" + tag + "> inside text unit");
            ++leaf_depth;
            return;
        }
        if (tag == "table") {
            if (table) {
                warn("nested <table> skipped");
                skip_depth = 1;
                return;
            }
            table.emplace();
            const char* id = attribute(attrs, "id");
            const char* doc = attribute(attrs, "doc_id");
            if (doc == nullptr) {
                doc = attribute(attrs, "doc-id");
            }
            table->doc_id = doc != nullptr ? std::string(doc) : doc_id();
            table->table_id = id != nullptr ? std::string(id) : table->doc_id + "#" + std::to_string(ordinal);
            ++ordinal;
            return;
        }
        if (auto field = leaf_field(tag)) {
            if (!table) {
                warn("<" + tag + "> outside <table> skipped");
                skip_depth = 1;
                return;
            }
            leaf = field;
            text.clear();
            leaf_depth = 0;
            return;
        }
        if (is_field_wrapper(tag) && table) {
            return;
        }
        if (is_document_wrapper(tag) && !table) {
            const char* id = attribute(attrs, "id");
            doc_ids.push_back(id != nullptr ? std::string(id) : doc_id());
            if (id != nullptr) {
                ordinal = 0;
            }
            return;
        }
        warn("unknown element <" + tag + "> skipped");
        skip_depth = 1;
    }

    void end(const XML_Char* raw_name)
    {
        if (skip_depth > 0) {
            --skip_depth;
            return;
        }
        if (leaf) {
            if (leaf_depth > 0) {
                --leaf_depth;
                return;
            }
            table->units(*leaf).push_back(normalize_whitespace(text));
            leaf.reset();
            return;
        }
        std::string tag = canonical_tag(raw_name);
        if (tag == "table" && table) {
            recount_cells(*table, *matcher);
            result.tables.push_back(std::move(*table));
            table.reset();
            return;
        }
        if (is_document_wrapper(tag) && !table && !doc_ids.empty()) {
            doc_ids.pop_back();
        }
    }

    void characters(const XML_Char* s, int len)
    {
        if (leaf && skip_depth == 0) {
            text.append(s, static_cast<std::size_t>(len));
        }
    }
};

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char** attrs)
{
    static_cast<ParserState*>(data)->start(name, attrs);
}

void XMLCALL on_end(void* data, const XML_Char* name) { static_cast<ParserState*>(data)->end(name); }

void XMLCALL on_text(void* data, const XML_Char* s, int len)
{
    static_cast<ParserState*>(data)->characters(s, len);
}

struct ParserDeleter {
    void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

}  // namespace

std::string normalize_whitespace(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    bool pending = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) != 0) {
            pending = !out.empty();
            continue;
        }
        if (pending) {
            out.push_back(' ');
            pending = false;
        }
        out.push_back(c);
    }
    return out;
}

XmlParseResult parse_table_xml(std::string_view document, std::string_view default_doc_id,
                               const NumericMatcher& matcher)
{
    std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
    if (!parser) {
        throw std::bad_alloc();
    }
    ParserState state;
    state.parser = parser.get();
    state.matcher = &matcher;
    state.default_doc_id = std::string(default_doc_id);

    XML_SetUserData(parser.get(), &state);
    XML_SetElementHandler(parser.get(), on_start, on_end);
    XML_SetCharacterDataHandler(parser.get(), on_text);

    if (XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE) ==
        XML_STATUS_ERROR) {
        auto offset = XML_GetCurrentByteIndex(parser.get());
        throw XmlParseError(std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(parser.get())),
                            offset < 0 ? 0 : static_cast<std::size_t>(offset));
    }
    return std::move(state.result);
}

XmlParseResult parse_table_xml_file(const std::filesystem::path& path, const NumericMatcher& matcher)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FileError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_table_xml(buffer.str(), path.stem().string(), matcher);
}

namespace {

void append_escaped(std::string& out, std::string_view text)
{
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
}

}  // namespace

std::string to_table_xml(const TableRecord& record)
{
    std::string out = "<table id=\"";
    append_escaped(out, record.table_id);
    out += "\" doc_id=\"";
    append_escaped(out, record.doc_id);
    out += "\">\n";

    auto leaf = [&](std::string_view tag, std::string_view text, std::string_view indent) {
        out += indent;
        out += '<';
        out += tag;
        out += '>';
        append_escaped(out, text);
        out += "</";
        out += tag;
        out += ">\n";
    };
    auto direct = [&](FieldType f, std::string_view tag) {
        for (const auto& unit : record.units(f)) {
            leaf(tag, unit, "  ");
        }
    };
    auto wrapped = [&](FieldType f, std::string_view wrapper, std::string_view tag) {
        if (record.units(f).empty()) {
            return;
        }
        out += "  <";
        out += wrapper;
        out += ">\n";
        for (const auto& unit : record.units(f)) {
            leaf(tag, unit, "    ");
        }
        out += "  </";
        out += wrapper;
        out += ">\n";
    };

    direct(FieldType::article_title, "article-title");
    direct(FieldType::abstract, "abstract");
    direct(FieldType::caption, "caption");
    wrapped(FieldType::referring_sentence, "referring-sentences", "sentence");
    wrapped(FieldType::footnote, "footnotes", "footnote");
    wrapped(FieldType::column_header, "column_headers", "column_header");
    wrapped(FieldType::row_header, "row_headers", "row_header");
    wrapped(FieldType::cell_value, "cell_values", "cell_value");
    out += "</table>\n";
    return out;
}

}  // namespace tablesearch
