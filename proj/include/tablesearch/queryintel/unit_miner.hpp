#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tablesearch/corpus/table_record.hpp"
#include "tablesearch/queryintel/ontology.hpp"
#include "tablesearch/queryintel/pos_tagger.hpp"

namespace tablesearch {

/// A term sequence labeled with the quantity type of the unit it was
/// written with.
struct UnitPair {
    std::string phrase;  ///< lowercased surface words
    std::string type;

    bool operator==(const UnitPair&) const = default;
    auto operator<=>(const UnitPair&) const = default;
};

/// High-precision unit tagger. Recognized shapes, where the phrase is the
/// noun phrase ending right before the unit part:
///
///   "distance in cm", "mass of kg"   unit at the end or before punctuation
///   "iron line width (keV)"          parenthesized or bracketed unit
///   "luminosity erg"                 bare unit, two or more characters
///
/// Unit symbols match case-sensitively. One-letter symbols ("m", "K") only
/// count after "in" or inside brackets.
std::vector<UnitPair> mine_units_in_text(std::string_view text, const QuantityOntology& ontology,
                                         const PosLexicon& lexicon);

/// Runs the tagger over every text unit of every field; pairs are
/// deduplicated and kept in first-seen order.
std::vector<UnitPair> mine_unit_training_data(std::span<const TableRecord> records, const QuantityOntology& ontology,
                                              const PosLexicon& lexicon);

/// TSV "phrase<TAB>type".
void write_unit_pairs(std::ostream& out, std::span<const UnitPair> pairs);
std::vector<UnitPair> read_unit_pairs(std::istream& in);
std::vector<UnitPair> read_unit_pairs_file(const std::filesystem::path& path);

}  // namespace tablesearch
