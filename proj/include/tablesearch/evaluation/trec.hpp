#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tablesearch/ranker/rank.hpp"

namespace tablesearch {

/// Graded judgments: Non 0, Rel 1, HRel 2, Key 3. Unjudged pairs are grade 0.
class Judgments {
public:
    static constexpr int kMaxGrade = 3;

    /// Throws std::invalid_argument for a grade outside [0, 3].
    void set(const std::string& query_id, const std::string& table_id, int grade);
    [[nodiscard]] int grade(const std::string& query_id, const std::string& table_id) const;
    /// Judgments of one query, empty when the query is unknown.
    [[nodiscard]] const std::map<std::string, int>& of(const std::string& query_id) const;
    [[nodiscard]] std::vector<std::string> query_ids() const;
    [[nodiscard]] std::size_t relevant_count(const std::string& query_id) const;

    bool operator==(const Judgments&) const = default;

private:
    std::map<std::string, std::map<std::string, int>> grades_;
};

/// "qid 0 table_id grade" per line. Throws FormatError with the line number.
Judgments read_qrels(std::istream& in);
Judgments read_qrels_file(const std::filesystem::path& path);
void write_qrels(std::ostream& out, const Judgments& judgments);

/// query id -> ranking, best first.
using Run = std::map<std::string, std::vector<RankedTable>>;

/// "qid Q0 table_id rank score tag". Rankings are reordered by descending
/// score, ties by table id. Throws FormatError on malformed lines or a table
/// listed twice for one query.
Run read_run(std::istream& in);
Run read_run_file(const std::filesystem::path& path);
void write_run(std::ostream& out, const Run& run, const std::string& tag);
void write_ranking(std::ostream& out, const std::string& query_id, const std::vector<RankedTable>& ranking,
                   const std::string& tag);

struct Topic {
    std::string id;
    std::string title;  ///< the keyword query
    std::string intent; ///< optional category, not used for ranking

    bool operator==(const Topic&) const = default;
};

/// TREC topics: <top> blocks holding <num>, <title> and an optional
/// <intent>. Closing tags are optional; "Number:" and "Title:" prefixes are
/// dropped. Throws FormatError when a block lacks a number or title.
std::vector<Topic> read_topics(std::istream& in);
std::vector<Topic> read_topics_file(const std::filesystem::path& path);

}  // namespace tablesearch
