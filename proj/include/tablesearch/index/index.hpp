#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tablesearch/corpus/field_type.hpp"
#include "tablesearch/corpus/table_record.hpp"
#include "tablesearch/index/tokenizer.hpp"

namespace tablesearch {

using TermId = std::uint32_t;
/// Position of a table in the index; tables are ordered by table_id.
using TableNo = std::uint32_t;

/// Occurrences of one term in one text unit.
struct Posting {
    TableNo table = 0;
    FieldType field = FieldType::article_title;
    std::uint32_t unit = 0;
    std::vector<std::uint32_t> positions;

    bool operator==(const Posting&) const = default;
};

struct TableEntry {
    std::string table_id;
    std::string doc_id;
    std::size_t numeric_cell_count = 0;
    std::size_t total_cell_count = 0;
    /// |f| per field type: kept tokens over all text units of the field.
    std::array<std::uint64_t, kFieldCount> field_length{};

    [[nodiscard]] std::uint64_t length(FieldScope scope) const;
    bool operator==(const TableEntry&) const = default;
};

struct TermStats {
    std::uint64_t ctf = 0;
    std::uint32_t df = 0;

    bool operator==(const TermStats&) const = default;
};

/// Per-field-type and corpus-wide collection statistics.
struct CollectionStats {
    std::size_t table_count = 0;
    std::uint64_t total_tokens = 0;
    std::array<std::uint64_t, kFieldCount> field_tokens{};
    std::vector<std::array<TermStats, kFieldCount>> per_field;  // [term][field]
    std::vector<TermStats> corpus;                              // [term], df counts tables

    [[nodiscard]] TermStats term(TermId id, FieldScope scope) const;
    [[nodiscard]] std::uint64_t length(FieldScope scope) const;

    bool operator==(const CollectionStats&) const = default;
};

struct TermFrequency {
    TermId term = 0;
    std::uint32_t count = 0;

    bool operator==(const TermFrequency&) const = default;
};

/// Positional, field-aware inverted index over table records. Immutable
/// once built; safe for concurrent readers.
class Index {
public:
    static constexpr int kFormatVersion = 1;

    /// Throws DuplicateTableError when two records share a table id.
    static Index build(std::span<const TableRecord> records, Tokenizer tokenizer = {});

    void save(const std::filesystem::path& dir) const;
    static Index load(const std::filesystem::path& dir);

    [[nodiscard]] std::size_t table_count() const { return tables_.size(); }
    [[nodiscard]] const TableEntry& table(TableNo t) const { return tables_[t]; }
    [[nodiscard]] std::span<const TableEntry> tables() const { return tables_; }
    [[nodiscard]] std::optional<TableNo> find_table(std::string_view table_id) const;

    [[nodiscard]] std::size_t vocabulary_size() const { return terms_.size(); }
    [[nodiscard]] std::optional<TermId> term_id(std::string_view term) const;
    [[nodiscard]] const std::string& term(TermId id) const { return terms_[id]; }

    /// All postings of a term, ordered by (table, field, unit).
    [[nodiscard]] std::span<const Posting> postings(TermId id) const { return postings_[id]; }
    /// Postings of a term within one table (and optionally one field).
    [[nodiscard]] std::span<const Posting> postings(TermId id, TableNo t) const;
    [[nodiscard]] std::span<const Posting> postings(TermId id, TableNo t, FieldType f) const;

    /// c(w, f): occurrences of the term in the table's field (or whole table).
    [[nodiscard]] std::uint64_t count(TermId id, TableNo t, FieldScope scope) const;
    [[nodiscard]] std::uint64_t field_length(TableNo t, FieldScope scope) const { return tables_[t].length(scope); }

    [[nodiscard]] const CollectionStats& stats() const { return stats_; }

    /// Sparse term frequencies of one field of a table, ordered by term id.
    [[nodiscard]] std::span<const TermFrequency> term_vector(TableNo t, FieldType f) const
    {
        return vectors_[t][field_index(f)];
    }

    [[nodiscard]] const Tokenizer& tokenizer() const { return tokenizer_; }

    bool same_content(const Index& other) const;

private:
    void finalize();

    Tokenizer tokenizer_;
    std::vector<TableEntry> tables_;
    std::unordered_map<std::string, TableNo> table_numbers_;
    std::vector<std::string> terms_;
    std::unordered_map<std::string, TermId> term_ids_;
    std::vector<std::vector<Posting>> postings_;
    CollectionStats stats_;
    std::vector<std::array<std::vector<TermFrequency>, kFieldCount>> vectors_;
};

/// TSV dump "term field ctf df", one row per (term, field) with ctf > 0 and
/// one "all" row per term. Rows ordered by term, then field.
void write_stats_tsv(std::ostream& out, const Index& index);

/// TSV dump "table_id field length" for every table and field type.
void write_lengths_tsv(std::ostream& out, const Index& index);

}  // namespace tablesearch
