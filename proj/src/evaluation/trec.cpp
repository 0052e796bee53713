#include "tablesearch/evaluation/trec.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tablesearch/error.hpp"
#include "tablesearch/queryintel/text_util.hpp"

namespace tablesearch {

void Judgments::set(const std::string& query_id, const std::string& table_id, int grade)
{
    if (grade < 0 || grade > kMaxGrade) {
        throw std::invalid_argument("grade " + std::to_string(grade) + " outside [0, 3]");
    }
    grades_[query_id][table_id] = grade;
}

int Judgments::grade(const std::string& query_id, const std::string& table_id) const
{
    auto q = grades_.find(query_id);
    if (q == grades_.end()) {
        return 0;
    }
    auto t = q->second.find(table_id);
    return t == q->second.end() ? 0 : t->second;
}

const std::map<std::string, int>& Judgments::of(const std::string& query_id) const
{
    static const std::map<std::string, int> kEmpty;
    auto q = grades_.find(query_id);
    return q == grades_.end() ? kEmpty : q->second;
}

std::vector<std::string> Judgments::query_ids() const
{
    std::vector<std::string> ids;
    for (const auto& [id, _] : grades_) {
        ids.push_back(id);
    }
    return ids;
}

std::size_t Judgments::relevant_count(const std::string& query_id) const
{
    const auto& g = of(query_id);
    return static_cast<std::size_t>(std::count_if(g.begin(), g.end(), [](const auto& kv) { return kv.second >= 1; }));
}

Judgments read_qrels(std::istream& in)
{
    Judgments judgments;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) {
            continue;
        }
        std::istringstream fields(line);
        std::string qid;
        std::string iteration;
        std::string table_id;
        std::string grade_text;
        std::string extra;
        if (!(fields >> qid >> iteration >> table_id >> grade_text) || (fields >> extra)) {
            throw FormatError("qrels line " + std::to_string(line_no) + ": expected 'qid 0 table_id grade'");
        }
        double grade = parse_double(grade_text, "qrels line " + std::to_string(line_no));
        if (grade != static_cast<int>(grade) || grade < 0 || grade > Judgments::kMaxGrade) {
            throw FormatError("qrels line " + std::to_string(line_no) + ": grade must be 0, 1, 2 or 3");
        }
        judgments.set(qid, table_id, static_cast<int>(grade));
    }
    return judgments;
}

Judgments read_qrels_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open qrels " + path.string());
    }
    return read_qrels(in);
}

void write_qrels(std::ostream& out, const Judgments& judgments)
{
    for (const auto& qid : judgments.query_ids()) {
        for (const auto& [table, grade] : judgments.of(qid)) {
            out << qid << " 0 " << table << ' ' << grade << '\n';
        }
    }
}

Run read_run(std::istream& in)
{
    Run run;
    std::map<std::string, std::set<std::string>> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) {
            continue;
        }
        std::istringstream fields(line);
        std::string qid;
        std::string q0;
        std::string table_id;
        std::string rank;
        std::string score;
        std::string tag;
        if (!(fields >> qid >> q0 >> table_id >> rank >> score >> tag)) {
            throw FormatError("run line " + std::to_string(line_no) + ": expected 'qid Q0 table_id rank score tag'");
        }
        if (rank.empty() || !std::all_of(rank.begin(), rank.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw FormatError("run line " + std::to_string(line_no) + ": rank '" + rank + "' is not an integer");
        }
        if (!seen[qid].insert(table_id).second) {
            throw FormatError("run line " + std::to_string(line_no) + ": table " + table_id + " listed twice for " +
                              qid);
        }
        run[qid].push_back({table_id, parse_double(score, "run line " + std::to_string(line_no))});
    }
    for (auto& [_, ranking] : run) {
        sort_ranking(ranking, ranking.size());
    }
    return run;
}

Run read_run_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open run " + path.string());
    }
    return read_run(in);
}

void write_ranking(std::ostream& out, const std::string& query_id, const std::vector<RankedTable>& ranking,
                   const std::string& tag)
{
    std::ostringstream line;
    line.precision(17);
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        line.str({});
        line << query_id << " Q0 " << ranking[i].table_id << ' ' << i + 1 << ' ' << ranking[i].score << ' ' << tag
             << '\n';
        out << line.str();
    }
}

void write_run(std::ostream& out, const Run& run, const std::string& tag)
{
    for (const auto& [qid, ranking] : run) {
        write_ranking(out, qid, ranking, tag);
    }
}

namespace {

std::string tag_text(std::string_view block, std::string_view tag)
{
    std::string open = "<" + std::string(tag) + ">";
    auto start = block.find(open);
    if (start == std::string_view::npos) {
        return {};
    }
    start += open.size();
    auto end = block.find('<', start);
    auto text = std::string(trim(block.substr(start, end == std::string_view::npos ? end : end - start)));
    for (std::string_view prefix : {"Number:", "Title:", "Intent:"}) {
        if (text.starts_with(prefix)) {
            text = std::string(trim(std::string_view(text).substr(prefix.size())));
        }
    }
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

}  // namespace

std::vector<Topic> read_topics(std::istream& in)
{
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<Topic> topics;
    std::size_t pos = 0;
    while ((pos = content.find("<top>", pos)) != std::string::npos) {
        auto end = content.find("</top>", pos);
        if (end == std::string::npos) {
            throw FormatError("topics: <top> without </top>");
        }
        std::string_view block(content.data() + pos, end - pos);
        Topic topic{tag_text(block, "num"), tag_text(block, "title"), tag_text(block, "intent")};
        if (topic.id.empty() || topic.title.empty()) {
            throw FormatError("topics: block at byte " + std::to_string(pos) + " lacks <num> or <title>");
        }
        topics.push_back(std::move(topic));
        pos = end;
    }
    return topics;
}

std::vector<Topic> read_topics_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open topics " + path.string());
    }
    return read_topics(in);
}

}  // namespace tablesearch
