#include "taxolex/symbols.hpp"

#include <algorithm>
#include <set>

#include "taxolex/errors.hpp"

namespace taxolex {

bool is_identifier(const std::string& s) {
    if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    });
}

std::string to_string(TaxonomyLevel level) {
    return level == TaxonomyLevel::Terminal ? "T" : "NT";
}

TaxonomyLevel taxonomy_level_from_string(const std::string& s) {
    if (s == "T") return TaxonomyLevel::Terminal;
    if (s == "NT") return TaxonomyLevel::NonTerminal;
    throw ValidationError("unknown taxonomy level '" + s + "' (expected T or NT)");
}

bool Taxonomy::has_symbol(const std::string& symbol_name) const {
    return find_symbol(symbol_name) != nullptr;
}

const TaxonomySymbol* Taxonomy::find_symbol(const std::string& symbol_name) const {
    for (const auto& s : symbols) {
        if (s.name == symbol_name) return &s;
    }
    return nullptr;
}

bool Taxonomy::allows(const std::string& symbol_name, const std::string& qualifier) const {
    const TaxonomySymbol* s = find_symbol(symbol_name);
    if (s == nullptr) return false;
    if (qualifier.empty()) return true;
    return std::find(s->qualifiers.begin(), s->qualifiers.end(), qualifier) != s->qualifiers.end();
}

std::vector<std::string> Taxonomy::symbol_names() const {
    std::vector<std::string> out;
    out.reserve(symbols.size());
    for (const auto& s : symbols) out.push_back(s.name);
    return out;
}

void Taxonomy::validate() const {
    if (!is_identifier(name)) {
        throw ValidationError("taxonomy name '" + name + "' is not a valid identifier");
    }
    if (symbols.empty()) {
        throw ValidationError("taxonomy '" + name + "' declares no symbols");
    }
    std::set<std::string> seen;
    for (const auto& s : symbols) {
        if (!is_identifier(s.name)) {
            throw ValidationError("taxonomy '" + name + "': symbol '" + s.name +
                                  "' is not a valid identifier");
        }
        if (s.name == kNullTerminal) {
            throw ValidationError("taxonomy '" + name + "': the name 'null' is reserved");
        }
        if (!seen.insert(s.name).second) {
            throw ValidationError("taxonomy '" + name + "': duplicate symbol '" + s.name + "'");
        }
        std::set<std::string> qseen;
        for (const auto& q : s.qualifiers) {
            if (!is_identifier(q)) {
                throw ValidationError("taxonomy '" + name + "': qualifier '" + q +
                                      "' on symbol '" + s.name + "' is not a valid identifier");
            }
            if (!qseen.insert(q).second) {
                throw ValidationError("taxonomy '" + name + "': duplicate qualifier '" + q +
                                      "' on symbol '" + s.name + "'");
            }
        }
    }
}

}  // namespace taxolex
