#include "taxolex/catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include <nlohmann/json.hpp>

#include "taxolex/detail/embedded_data.hpp"
#include "taxolex/errors.hpp"
#include "taxolex/io.hpp"

namespace taxolex {

namespace {

const char* kBuiltinTerminalTaxonomies[] = {
    "amar2005", "brehmermunzner2013", "gotzzhou2009", "yi2007"};
const char* kBuiltinNonTerminalTaxonomies[] = {
    "shneiderman1996", "gotzwen2009", "guo2015"};

const char* find_embedded(const std::string& relative_path) {
    const detail::EmbeddedFile* files = detail::embedded_files();
    for (std::size_t i = 0; i < detail::embedded_file_count(); ++i) {
        if (relative_path == files[i].path) return files[i].body;
    }
    return nullptr;
}

std::string get_string(const nlohmann::json& j, const char* key, const std::string& origin,
                       bool required = true) {
    auto it = j.find(key);
    if (it == j.end()) {
        if (required) throw ValidationError(origin + ": missing field '" + key + "'");
        return "";
    }
    if (!it->is_string()) throw ValidationError(origin + ": field '" + key + "' must be a string");
    return it->get<std::string>();
}

void check_provenance(const std::string& provenance, const std::string& citation,
                      const std::string& origin) {
    static const std::set<std::string> allowed = {
        "", "paper-explicit", "paper-described", "catalog-authored"};
    if (!allowed.count(provenance)) {
        throw ValidationError(origin + ": unknown provenance '" + provenance + "'");
    }
    if (provenance == "paper-explicit" && citation.empty()) {
        throw ValidationError(origin + ": paper-explicit entries require a citation");
    }
}

}  // namespace

Taxonomy taxonomy_from_json(const std::string& text, const std::string& origin) {
    nlohmann::json j = parse_json(text, origin);
    if (!j.is_object()) throw ValidationError(origin + ": taxonomy file must hold an object");

    Taxonomy t;
    t.name = get_string(j, "name", origin);
    t.level = taxonomy_level_from_string(get_string(j, "level", origin));
    t.citation = get_string(j, "citation", origin, false);
    t.provenance = get_string(j, "provenance", origin, false);
    check_provenance(t.provenance, t.citation, origin);

    auto symbols = j.find("symbols");
    if (symbols == j.end() || !symbols->is_array()) {
        throw ValidationError(origin + ": missing 'symbols' array");
    }
    for (const auto& s : *symbols) {
        TaxonomySymbol sym;
        if (s.is_string()) {
            sym.name = s.get<std::string>();
        } else if (s.is_object()) {
            sym.name = get_string(s, "name", origin);
            sym.citation = get_string(s, "citation", origin, false);
            sym.provenance = get_string(s, "provenance", origin, false);
            check_provenance(sym.provenance, sym.citation, origin);
            if (auto q = s.find("qualifiers"); q != s.end()) {
                for (const auto& qv : *q) sym.qualifiers.push_back(qv.get<std::string>());
            }
        } else {
            throw ValidationError(origin + ": symbols must be strings or objects");
        }
        t.symbols.push_back(std::move(sym));
    }
    t.validate();
    return t;
}

RuleSet ruleset_from_json(const std::string& text, const std::string& origin) {
    nlohmann::json j = parse_json(text, origin);
    if (!j.is_object()) throw ValidationError(origin + ": rule-set file must hold an object");

    RuleSet rs;
    rs.name = get_string(j, "name", origin);
    rs.terminal_taxonomy = get_string(j, "terminal_taxonomy", origin);
    rs.nonterminal_taxonomy = get_string(j, "nonterminal_taxonomy", origin);
    rs.citation = get_string(j, "citation", origin, false);
    rs.provenance = get_string(j, "provenance", origin, false);
    check_provenance(rs.provenance, rs.citation, origin);

    auto rules = j.find("rules");
    if (rules == j.end() || !rules->is_array()) {
        throw ValidationError(origin + ": missing 'rules' array");
    }
    for (const auto& r : *rules) {
        ProductionRule rule;
        rule.nonterminal = get_string(r, "nonterminal", origin);
        rule.pattern_text = get_string(r, "pattern", origin);
        rule.description = get_string(r, "description", origin, false);
        rule.provenance = get_string(r, "provenance", origin, false);
        rs.rules.push_back(std::move(rule));
    }
    if (auto nulls = j.find("null_nonterminals"); nulls != j.end()) {
        for (const auto& n : *nulls) rs.null_nonterminals.push_back(n.get<std::string>());
    }
    return rs;
}

const ProductionRule* RuleSet::find_rule(const std::string& nonterminal) const {
    for (const auto& r : rules) {
        if (r.nonterminal == nonterminal) return &r;
    }
    return nullptr;
}

std::string Diagnostic::display() const {
    std::string out;
    if (!rule.empty()) out += "rule '" + rule + "': ";
    out += message;
    if (!symbol.empty()) out += " (symbol '" + symbol + "')";
    return out;
}

std::vector<Diagnostic> resolve_ruleset(RuleSet& rs, const Taxonomy& terminals,
                                        const Taxonomy& nonterminals) {
    std::vector<Diagnostic> diags;
    if (terminals.level != TaxonomyLevel::Terminal) {
        diags.push_back({"", terminals.name, "terminal_taxonomy is not level T"});
    }
    if (nonterminals.level != TaxonomyLevel::NonTerminal) {
        diags.push_back({"", nonterminals.name, "nonterminal_taxonomy is not level NT"});
    }
    if (!diags.empty()) return diags;

    // Partition check: rules + null_nonterminals must cover the non-terminal
    // taxonomy exactly once each.
    std::map<std::string, int> seen;
    for (const auto& r : rs.rules) seen[r.nonterminal] += 1;
    for (const auto& n : rs.null_nonterminals) seen[n] += 1;
    for (const auto& sym : nonterminals.symbols) {
        auto it = seen.find(sym.name);
        if (it == seen.end()) {
            diags.push_back({sym.name, "",
                             "non-terminal is housed neither in rules nor null_nonterminals"});
        } else if (it->second > 1) {
            diags.push_back({sym.name, "", "non-terminal is housed more than once"});
        }
    }
    for (const auto& [name, count] : seen) {
        (void)count;
        if (!nonterminals.has_symbol(name)) {
            diags.push_back({name, "",
                             "name does not belong to non-terminal taxonomy '" +
                                 nonterminals.name + "'"});
        }
    }

    // Parse and expand in definition order: a rule may reference non-terminals
    // defined above it, and such a reference shadows an equally named
    // terminal (that is how the composite mantra rule reads its parts).
    std::map<std::string, PatternPtr> defined;  // non-terminal -> occurrence pattern
    for (auto& rule : rs.rules) {
        auto checker = [&](const std::string& name, const std::string& qual) {
            if (defined.count(name)) return qual.empty();
            return terminals.allows(name, qual);
        };
        try {
            rule.source_ast = parse_pattern(rule.pattern_text, checker);
            rule.terminal_ast = substitute_symbols(
                rule.source_ast,
                [&](const std::string& name, const std::string& qual) -> PatternPtr {
                    auto it = defined.find(name);
                    if (it == defined.end() || !qual.empty()) return nullptr;
                    return it->second;
                });
            if (!can_match_nonempty(*rule.terminal_ast)) {
                diags.push_back({rule.nonterminal, "",
                                 "pattern cannot match any non-empty sequence"});
                continue;
            }
            rule.normalized_nonempty = nullable(*rule.terminal_ast);
            // Referencing a non-terminal means one occurrence of it, which is
            // never empty.
            defined[rule.nonterminal] = rule.normalized_nonempty
                                            ? nonempty(rule.terminal_ast)
                                            : rule.terminal_ast;
        } catch (const ParseError& e) {
            diags.push_back({rule.nonterminal, "", e.what()});
        } catch (const ValidationError& e) {
            diags.push_back({rule.nonterminal, "", e.what()});
        }
    }
    return diags;
}

CompiledRuleSet compile_ruleset(const RuleSet& rs, const Taxonomy& terminals) {
    CompiledRuleSet out;
    out.name = rs.name;
    out.terminal_taxonomy = rs.terminal_taxonomy;
    out.nonterminal_taxonomy = rs.nonterminal_taxonomy;
    out.null_nonterminals = rs.null_nonterminals;
    for (const auto& rule : rs.rules) {
        if (!rule.terminal_ast) {
            throw ValidationError("rule set '" + rs.name + "' was not resolved before compile");
        }
        CompiledRule cr;
        cr.nonterminal = rule.nonterminal;
        cr.automaton = SymbolAutomaton::compile(rule.terminal_ast, terminals);
        cr.normalized_nonempty = cr.automaton.normalized_nonempty();
        out.rules.push_back(std::move(cr));
    }
    return out;
}

Catalog::Catalog() = default;

std::vector<std::string> Catalog::builtin_taxonomies() {
    std::vector<std::string> names;
    for (const char* n : kBuiltinTerminalTaxonomies) names.push_back(n);
    for (const char* n : kBuiltinNonTerminalTaxonomies) names.push_back(n);
    return names;
}

std::vector<std::string> Catalog::builtin_rulesets() {
    std::vector<std::string> names;
    for (const char* nt : kBuiltinNonTerminalTaxonomies) {
        for (const char* t : kBuiltinTerminalTaxonomies) {
            names.push_back(std::string(t) + "-" + nt + "-mapping");
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

const Taxonomy& Catalog::taxonomy(const std::string& name_or_path) {
    auto it = taxonomies_.find(name_or_path);
    if (it != taxonomies_.end()) return it->second;

    std::string relative = "taxonomies/" + name_or_path + ".json";
    if (const char* body = find_embedded(relative)) {
        Taxonomy t = taxonomy_from_json(body, relative);
        if (t.name != name_or_path) {
            throw ValidationError("builtin taxonomy name mismatch for '" + name_or_path + "'");
        }
        return taxonomies_.emplace(name_or_path, std::move(t)).first->second;
    }
    if (std::filesystem::exists(name_or_path)) {
        Taxonomy t = taxonomy_from_json(read_text_file(name_or_path), name_or_path);
        return taxonomies_.emplace(name_or_path, std::move(t)).first->second;
    }
    throw ValidationError("unknown taxonomy '" + name_or_path +
                          "' (not a builtin name and not an existing file)");
}

void Catalog::register_taxonomy(Taxonomy taxonomy) {
    taxonomy.validate();
    std::string name = taxonomy.name;
    taxonomies_[name] = std::move(taxonomy);
}

RuleSet Catalog::finish_ruleset(RuleSet rs) {
    const Taxonomy& terminals = taxonomy(rs.terminal_taxonomy);
    const Taxonomy& nonterminals = taxonomy(rs.nonterminal_taxonomy);
    std::vector<Diagnostic> diags = resolve_ruleset(rs, terminals, nonterminals);
    if (!diags.empty()) {
        std::string msg = "rule set '" + rs.name + "' is invalid:";
        for (const auto& d : diags) msg += "\n  " + d.display();
        throw ValidationError(msg);
    }
    return rs;
}

RuleSet Catalog::ruleset(const std::string& terminal_tax, const std::string& nonterminal_tax) {
    return ruleset_by_name(terminal_tax + "-" + nonterminal_tax + "-mapping");
}

RuleSet Catalog::ruleset_source(const std::string& name_or_path) {
    std::string relative = "rulesets/" + name_or_path + ".json";
    if (const char* body = find_embedded(relative)) {
        return ruleset_from_json(body, relative);
    }
    if (std::filesystem::exists(name_or_path)) {
        return ruleset_from_json(read_text_file(name_or_path), name_or_path);
    }
    throw ValidationError("unknown rule set '" + name_or_path +
                          "' (no builtin pairing and no such file)");
}

RuleSet Catalog::ruleset_by_name(const std::string& name_or_path) {
    return finish_ruleset(ruleset_source(name_or_path));
}

std::vector<Diagnostic> Catalog::validate(const RuleSet& rs) {
    RuleSet copy = rs;
    const Taxonomy& terminals = taxonomy(rs.terminal_taxonomy);
    const Taxonomy& nonterminals = taxonomy(rs.nonterminal_taxonomy);
    return resolve_ruleset(copy, terminals, nonterminals);
}

}  // namespace taxolex
