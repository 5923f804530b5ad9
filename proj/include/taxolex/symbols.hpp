#pragma once

#include <optional>
#include <string>
#include <vector>

namespace taxolex {

// Reserved terminal for log records no taxonomy category covers.
// It may appear in mapped sequences but never inside a pattern, and it
// acts as a hard barrier when matching.
inline constexpr const char* kNullTerminal = "null";

// Identifiers: [a-z][a-z0-9_-]*
bool is_identifier(const std::string& s);

enum class TaxonomyLevel { Terminal, NonTerminal };

std::string to_string(TaxonomyLevel level);
TaxonomyLevel taxonomy_level_from_string(const std::string& s);

// A primitive symbol of a grammar: the category an individual interaction
// maps to. The qualifier carries attribute continuity (e.g. inspect:same).
struct Terminal {
    std::string name;
    std::string qualifier;  // empty = unqualified

    bool operator==(const Terminal&) const = default;
    bool is_null() const { return name == kNullTerminal; }
    std::string display() const {
        return qualifier.empty() ? name : name + ":" + qualifier;
    }
};

// One symbol row of a taxonomy file. `qualifiers` lists the attribute
// qualifiers patterns may attach to this symbol.
struct TaxonomySymbol {
    std::string name;
    std::vector<std::string> qualifiers;
    std::string citation;
    std::string provenance;  // paper-explicit | paper-described | catalog-authored
};

// A named symbol set at terminal or non-terminal level.
struct Taxonomy {
    std::string name;
    TaxonomyLevel level = TaxonomyLevel::Terminal;
    std::vector<TaxonomySymbol> symbols;
    std::string citation;
    std::string provenance;

    bool has_symbol(const std::string& symbol_name) const;
    const TaxonomySymbol* find_symbol(const std::string& symbol_name) const;
    // True when `qualifier` is empty or declared for the symbol.
    bool allows(const std::string& symbol_name, const std::string& qualifier) const;
    std::vector<std::string> symbol_names() const;

    // Throws ValidationError on duplicate names, bad identifiers, use of the
    // reserved null name, or an empty symbol set.
    void validate() const;
};

}  // namespace taxolex
