#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tablesearch/index/index.hpp"

namespace tablesearch {

enum class WindowKind : std::uint8_t {
    ordered,    ///< #1: terms adjacent and in order
    unordered,  ///< #uwN: all terms inside a span of N positions, any order
};

struct WindowSpec {
    WindowKind kind = WindowKind::ordered;
    unsigned width = 8;  ///< unordered only

    static constexpr WindowSpec ordered() { return {WindowKind::ordered, 1}; }
    static constexpr WindowSpec unordered(unsigned width = 8) { return {WindowKind::unordered, width}; }

    bool operator==(const WindowSpec&) const = default;
};

/// Window matches inside one text unit, given the sorted positions of each
/// query term (one list per entry of the term sequence, repeats allowed).
///
/// Ordered: number of positions p with term i at p + i for every i.
/// Unordered: number of start positions s holding one of the terms such that
/// [s, s + width) contains every term (with multiplicity).
/// A single term yields its plain frequency.
std::uint64_t count_windows_in_unit(std::span<const std::vector<std::uint32_t>> positions, WindowSpec spec);

/// Window matches of a term sequence in one table, summed over the text units
/// of the scope. Windows never cross text units. Unknown terms give 0.
std::uint64_t window_count(const Index& index, TableNo table, std::span<const std::string> terms, FieldScope scope,
                           WindowSpec spec);

/// Collection frequency and table frequency of a window over the scope.
TermStats window_collection_stats(const Index& index, std::span<const std::string> terms, FieldScope scope,
                                  WindowSpec spec);

}  // namespace tablesearch
