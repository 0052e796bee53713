#include "tablesearch/index/index.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tablesearch/error.hpp"

namespace tablesearch {

std::uint64_t TableEntry::length(FieldScope scope) const
{
    if (scope.is_whole()) {
        return std::accumulate(field_length.begin(), field_length.end(), std::uint64_t{0});
    }
    return field_length[field_index(scope.field())];
}

TermStats CollectionStats::term(TermId id, FieldScope scope) const
{
    if (id >= corpus.size()) {
        return {};
    }
    return scope.is_whole() ? corpus[id] : per_field[id][field_index(scope.field())];
}

std::uint64_t CollectionStats::length(FieldScope scope) const
{
    return scope.is_whole() ? total_tokens : field_tokens[field_index(scope.field())];
}

Index Index::build(std::span<const TableRecord> records, Tokenizer tokenizer)
{
    std::vector<const TableRecord*> sorted;
    sorted.reserve(records.size());
    for (const auto& r : records) {
        check_invariants(r);
        sorted.push_back(&r);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const TableRecord* a, const TableRecord* b) { return a->table_id < b->table_id; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i]->table_id == sorted[i - 1]->table_id) {
            throw DuplicateTableError(sorted[i]->table_id);
        }
    }

    Index index;
    index.tokenizer_ = std::move(tokenizer);
    std::map<std::string, std::vector<Posting>> by_term;
    for (std::size_t t = 0; t < sorted.size(); ++t) {
        const auto& record = *sorted[t];
        index.tables_.push_back({record.table_id, record.doc_id, record.numeric_cell_count,
                                 record.total_cell_count, {}});
        for (auto field : kAllFields) {
            const auto& units = record.units(field);
            for (std::size_t u = 0; u < units.size(); ++u) {
                std::map<std::string, std::vector<std::uint32_t>> unit_terms;
                for (auto& token : index.tokenizer_.tokenize(units[u])) {
                    unit_terms[std::move(token.stem)].push_back(token.position);
                }
                for (auto& [term, positions] : unit_terms) {
                    by_term[term].push_back({static_cast<TableNo>(t), field, static_cast<std::uint32_t>(u),
                                             std::move(positions)});
                }
            }
        }
    }
    for (auto& [term, postings] : by_term) {
        index.terms_.push_back(term);
        index.postings_.push_back(std::move(postings));
    }
    index.finalize();
    return index;
}

void Index::finalize()
{
    table_numbers_.clear();
    for (std::size_t t = 0; t < tables_.size(); ++t) {
        tables_[t].field_length.fill(0);
        table_numbers_.emplace(tables_[t].table_id, static_cast<TableNo>(t));
    }
    term_ids_.clear();
    for (std::size_t id = 0; id < terms_.size(); ++id) {
        term_ids_.emplace(terms_[id], static_cast<TermId>(id));
    }

    stats_ = CollectionStats{};
    stats_.table_count = tables_.size();
    stats_.per_field.assign(terms_.size(), {});
    stats_.corpus.assign(terms_.size(), {});
    vectors_.assign(tables_.size(), {});

    for (std::size_t id = 0; id < terms_.size(); ++id) {
        auto& field_stats = stats_.per_field[id];
        auto& corpus = stats_.corpus[id];
        std::array<std::uint64_t, kFieldCount> tf{};
        TableNo current = 0;
        bool any = false;

        auto flush = [&](TableNo t) {
            bool seen = false;
            for (std::size_t f = 0; f < kFieldCount; ++f) {
                if (tf[f] == 0) {
                    continue;
                }
                seen = true;
                field_stats[f].df += 1;
                vectors_[t][f].push_back({static_cast<TermId>(id), static_cast<std::uint32_t>(tf[f])});
            }
            if (seen) {
                corpus.df += 1;
            }
            tf.fill(0);
        };

        for (const auto& p : postings_[id]) {
            if (any && p.table != current) {
                flush(current);
            }
            current = p.table;
            any = true;
            auto n = static_cast<std::uint64_t>(p.positions.size());
            auto f = field_index(p.field);
            tf[f] += n;
            field_stats[f].ctf += n;
            corpus.ctf += n;
            tables_[p.table].field_length[f] += n;
            stats_.field_tokens[f] += n;
            stats_.total_tokens += n;
        }
        if (any) {
            flush(current);
        }
    }
}

std::optional<TableNo> Index::find_table(std::string_view table_id) const
{
    auto it = table_numbers_.find(std::string(table_id));
    if (it == table_numbers_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<TermId> Index::term_id(std::string_view term) const
{
    auto it = term_ids_.find(std::string(term));
    if (it == term_ids_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::span<const Posting> Index::postings(TermId id, TableNo t) const
{
    const auto& list = postings_[id];
    auto lo = std::lower_bound(list.begin(), list.end(), t, [](const Posting& p, TableNo v) { return p.table < v; });
    auto hi = std::upper_bound(lo, list.end(), t, [](TableNo v, const Posting& p) { return v < p.table; });
    return {lo, hi};
}

std::span<const Posting> Index::postings(TermId id, TableNo t, FieldType f) const
{
    auto in_table = postings(id, t);
    auto lo = std::lower_bound(in_table.begin(), in_table.end(), f,
                               [](const Posting& p, FieldType v) { return p.field < v; });
    auto hi = std::upper_bound(lo, in_table.end(), f, [](FieldType v, const Posting& p) { return v < p.field; });
    return {lo, hi};
}

std::uint64_t Index::count(TermId id, TableNo t, FieldScope scope) const
{
    auto range = scope.is_whole() ? postings(id, t) : postings(id, t, scope.field());
    std::uint64_t n = 0;
    for (const auto& p : range) {
        n += p.positions.size();
    }
    return n;
}

bool Index::same_content(const Index& other) const
{
    return tables_ == other.tables_ && terms_ == other.terms_ && postings_ == other.postings_ &&
           stats_ == other.stats_ && vectors_ == other.vectors_;
}

void Index::save(const std::filesystem::path& dir) const
{
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream out(dir / name);
        if (!out) {
            throw FileError("cannot write " + (dir / name).string());
        }
        return out;
    };

    nlohmann::json manifest = {
        {"format", "tablesearch-index"},
        {"version", kFormatVersion},
        {"tokenizer", std::string(Tokenizer::kVersion)},
        {"tables", tables_.size()},
        {"terms", terms_.size()},
    };
    open("manifest.json") << manifest.dump(2) << '\n';

    auto tables = open("tables.jsonl");
    for (const auto& t : tables_) {
        nlohmann::json j = {
            {"table_id", t.table_id},
            {"doc_id", t.doc_id},
            {"numeric_cell_count", t.numeric_cell_count},
            {"total_cell_count", t.total_cell_count},
        };
        tables << j.dump() << '\n';
    }

    auto lexicon = open("lexicon.txt");
    for (const auto& term : terms_) {
        lexicon << term << '\n';
    }

    auto postings = open("postings.tsv");
    for (std::size_t id = 0; id < postings_.size(); ++id) {
        for (const auto& p : postings_[id]) {
            postings << id << '\t' << p.table << '\t' << field_index(p.field) << '\t' << p.unit << '\t';
            for (std::size_t i = 0; i < p.positions.size(); ++i) {
                postings << (i == 0 ? "" : ",") << p.positions[i];
            }
            postings << '\n';
        }
    }
}

Index Index::load(const std::filesystem::path& dir)
{
    auto open = [&](const char* name) {
        std::ifstream in(dir / name);
        if (!in) {
            throw FileError("cannot open " + (dir / name).string());
        }
        return in;
    };

    Index index;
    nlohmann::json manifest;
    try {
        auto in = open("manifest.json");
        manifest = nlohmann::json::parse(in);
        if (manifest.at("format") != "tablesearch-index") {
            throw FormatError("not a tablesearch index: " + dir.string());
        }
        if (manifest.at("version").get<int>() != kFormatVersion) {
            throw FormatError("unsupported index version " + manifest.at("version").dump());
        }
        if (manifest.at("tokenizer").get<std::string>() != Tokenizer::kVersion) {
            throw FormatError("index built with tokenizer " + manifest.at("tokenizer").dump());
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad index manifest: ") + e.what());
    }

    std::string line;
    {
        auto in = open("tables.jsonl");
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            try {
                auto j = nlohmann::json::parse(line);
                index.tables_.push_back({j.at("table_id").get<std::string>(), j.at("doc_id").get<std::string>(),
                                         j.at("numeric_cell_count").get<std::size_t>(),
                                         j.at("total_cell_count").get<std::size_t>(), {}});
            } catch (const nlohmann::json::exception& e) {
                throw FormatError(std::string("bad table entry: ") + e.what());
            }
        }
    }
    {
        auto in = open("lexicon.txt");
        while (std::getline(in, line)) {
            index.terms_.push_back(line);
        }
    }
    index.postings_.resize(index.terms_.size());
    {
        auto in = open("postings.tsv");
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream fields(line);
            std::size_t id = 0;
            std::size_t table = 0;
            std::size_t field = 0;
            std::size_t unit = 0;
            std::string positions;
            if (!(fields >> id >> table >> field >> unit >> positions) || id >= index.terms_.size() ||
                table >= index.tables_.size() || field >= kFieldCount) {
                throw FormatError("postings.tsv line " + std::to_string(line_no) + " is malformed");
            }
            Posting p{static_cast<TableNo>(table), kAllFields[field], static_cast<std::uint32_t>(unit), {}};
            std::istringstream ps(positions);
            std::string item;
            while (std::getline(ps, item, ',')) {
                p.positions.push_back(static_cast<std::uint32_t>(std::stoul(item)));
            }
            index.postings_[id].push_back(std::move(p));
        }
    }
    if (manifest.at("tables").get<std::size_t>() != index.tables_.size() ||
        manifest.at("terms").get<std::size_t>() != index.terms_.size()) {
        throw FormatError("index files disagree with manifest in " + dir.string());
    }
    index.finalize();
    return index;
}

void write_stats_tsv(std::ostream& out, const Index& index)
{
    const auto& stats = index.stats();
    out << "term\tfield\tctf\tdf\n";
    for (TermId id = 0; id < index.vocabulary_size(); ++id) {
        for (auto f : kAllFields) {
            auto s = stats.per_field[id][field_index(f)];
            if (s.ctf > 0) {
                out << index.term(id) << '\t' << field_name(f) << '\t' << s.ctf << '\t' << s.df << '\n';
            }
        }
        out << index.term(id) << "\tall\t" << stats.corpus[id].ctf << '\t' << stats.corpus[id].df << '\n';
    }
}

void write_lengths_tsv(std::ostream& out, const Index& index)
{
    out << "table_id\tfield\tlength\n";
    for (const auto& t : index.tables()) {
        for (auto f : kAllFields) {
            out << t.table_id << '\t' << field_name(f) << '\t' << t.field_length[field_index(f)] << '\n';
        }
    }
}

}  // namespace tablesearch
