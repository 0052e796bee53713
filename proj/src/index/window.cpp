#include "tablesearch/index/window.hpp"

#include <algorithm>
#include <optional>

namespace tablesearch {

namespace {

std::optional<std::vector<TermId>> resolve(const Index& index, std::span<const std::string> terms)
{
    std::vector<TermId> ids;
    ids.reserve(terms.size());
    for (const auto& term : terms) {
        auto id = index.term_id(term);
        if (!id) {
            return std::nullopt;
        }
        ids.push_back(*id);
    }
    return ids;
}

std::uint64_t count_ordered(std::span<const std::vector<std::uint32_t>> positions)
{
    std::uint64_t n = 0;
    for (auto p : positions[0]) {
        bool all = true;
        for (std::size_t i = 1; i < positions.size() && all; ++i) {
            all = std::binary_search(positions[i].begin(), positions[i].end(), p + static_cast<std::uint32_t>(i));
        }
        n += all ? 1 : 0;
    }
    return n;
}

std::uint64_t count_unordered(std::span<const std::vector<std::uint32_t>> positions, unsigned width)
{
    // Distinct position lists with the multiplicity each must reach.
    std::vector<std::pair<const std::vector<std::uint32_t>*, std::size_t>> needs;
    for (const auto& list : positions) {
        auto it = std::find_if(needs.begin(), needs.end(), [&](const auto& e) { return *e.first == list; });
        if (it == needs.end()) {
            needs.emplace_back(&list, 1);
        } else {
            ++it->second;
        }
    }
    std::vector<std::uint32_t> starts;
    for (const auto& [list, _] : needs) {
        starts.insert(starts.end(), list->begin(), list->end());
    }
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

    std::uint64_t n = 0;
    for (auto s : starts) {
        bool all = true;
        for (const auto& [list, need] : needs) {
            auto lo = std::lower_bound(list->begin(), list->end(), s);
            auto hi = std::lower_bound(lo, list->end(), s + width);
            if (static_cast<std::size_t>(hi - lo) < need) {
                all = false;
                break;
            }
        }
        n += all ? 1 : 0;
    }
    return n;
}

}  // namespace

std::uint64_t count_windows_in_unit(std::span<const std::vector<std::uint32_t>> positions, WindowSpec spec)
{
    if (positions.empty()) {
        return 0;
    }
    if (positions.size() == 1) {
        return positions[0].size();
    }
    return spec.kind == WindowKind::ordered ? count_ordered(positions) : count_unordered(positions, spec.width);
}

namespace {

std::uint64_t window_count_in_field(const Index& index, TableNo table, std::span<const TermId> ids, FieldType field,
                                    WindowSpec spec)
{
    std::vector<std::span<const Posting>> ranges;
    ranges.reserve(ids.size());
    for (auto id : ids) {
        auto r = index.postings(id, table, field);
        if (r.empty()) {
            return 0;
        }
        ranges.push_back(r);
    }
    std::uint64_t n = 0;
    std::vector<std::vector<std::uint32_t>> positions(ids.size());
    for (const auto& first : ranges[0]) {
        bool present = true;
        for (std::size_t i = 0; i < ranges.size() && present; ++i) {
            auto it = std::lower_bound(ranges[i].begin(), ranges[i].end(), first.unit,
                                       [](const Posting& p, std::uint32_t u) { return p.unit < u; });
            if (it == ranges[i].end() || it->unit != first.unit) {
                present = false;
            } else {
                positions[i] = it->positions;
            }
        }
        if (present) {
            n += count_windows_in_unit(positions, spec);
        }
    }
    return n;
}

}  // namespace

std::uint64_t window_count(const Index& index, TableNo table, std::span<const std::string> terms, FieldScope scope,
                           WindowSpec spec)
{
    if (terms.empty()) {
        return 0;
    }
    auto ids = resolve(index, terms);
    if (!ids) {
        return 0;
    }
    if (!scope.is_whole()) {
        return window_count_in_field(index, table, *ids, scope.field(), spec);
    }
    std::uint64_t n = 0;
    for (auto f : kAllFields) {
        n += window_count_in_field(index, table, *ids, f, spec);
    }
    return n;
}

TermStats window_collection_stats(const Index& index, std::span<const std::string> terms, FieldScope scope,
                                  WindowSpec spec)
{
    TermStats stats;
    if (terms.empty()) {
        return stats;
    }
    auto ids = resolve(index, terms);
    if (!ids) {
        return stats;
    }
    if (terms.size() == 1) {
        return index.stats().term((*ids)[0], scope);
    }
    std::optional<TableNo> last;
    for (const auto& p : index.postings((*ids)[0])) {
        if (last == p.table) {
            continue;
        }
        last = p.table;
        auto n = window_count(index, p.table, terms, scope, spec);
        stats.ctf += n;
        stats.df += n > 0 ? 1 : 0;
    }
    return stats;
}

}  // namespace tablesearch
