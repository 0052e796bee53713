#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tablesearch/index/tokenizer.hpp"

namespace tablesearch {

enum class SiKind { base, derived };

struct QuantityType {
    std::string name;                  ///< e.g. "Energy", "ElectricCharge"
    std::vector<std::string> symbols;  ///< unit symbols as written ("keV", "m/s^2")
    std::vector<std::string> terms;    ///< index terms of the symbols, same order
    SiKind kind = SiKind::derived;
    std::string description;

    bool operator==(const QuantityType&) const = default;
};

/// Quantity types with their unit symbols and descriptions, plus the
/// description of the dimensionless background class.
class QuantityOntology {
public:
    static constexpr std::string_view kDimensionless = "dimensionless";

    /// TSV "name<TAB>symbols<TAB>si_flag<TAB>description", symbols comma
    /// separated. si_flag is base, derived, or background (the single
    /// dimensionless row); rows with any other flag are skipped. Throws
    /// FormatError on malformed rows, a type without symbols, a symbol that
    /// is not exactly one index term, or a symbol shared by two types.
    static QuantityOntology read(std::istream& in, Tokenizer tokenizer = {});
    static QuantityOntology load(const std::filesystem::path& path, Tokenizer tokenizer = {});

    void add(QuantityType type);
    void set_background(std::string description) { background_ = std::move(description); }

    [[nodiscard]] const std::vector<QuantityType>& types() const { return types_; }
    [[nodiscard]] const QuantityType* find(std::string_view name) const;
    [[nodiscard]] const std::string& background() const { return background_; }

    /// Type of a unit symbol written exactly as in the ontology.
    [[nodiscard]] const QuantityType* type_of_symbol(std::string_view symbol) const;
    /// Type of a unit symbol given as an index term.
    [[nodiscard]] const QuantityType* type_of_term(std::string_view term) const;

    [[nodiscard]] const Tokenizer& tokenizer() const { return tokenizer_; }

private:
    Tokenizer tokenizer_;
    std::vector<QuantityType> types_;
    std::string background_;
    std::map<std::string, std::size_t, std::less<>> by_name_;
    std::map<std::string, std::size_t, std::less<>> by_symbol_;
    std::map<std::string, std::size_t, std::less<>> by_term_;
};

/// "ElectricCharge" -> "electric charge".
std::string split_camel_case(std::string_view name);

}  // namespace tablesearch
