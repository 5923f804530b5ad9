#pragma once

#include <map>
#include <string>
#include <vector>

#include "taxolex/automaton.hpp"
#include "taxolex/pattern.hpp"
#include "taxolex/symbols.hpp"

namespace taxolex {

// One production rule: a non-terminal defined as a regular expression over
// the terminal alphabet, possibly referencing non-terminals defined earlier
// in the same rule set (the composite then expands to pure terminals).
struct ProductionRule {
    std::string nonterminal;
    std::string pattern_text;
    std::string description;
    std::string provenance;

    // Filled by resolution:
    PatternPtr source_ast;    // as written
    PatternPtr terminal_ast;  // non-terminal references expanded
    bool normalized_nonempty = false;  // terminal_ast is nullable; matching
                                       // tightens it to its non-empty language
};

// Terminal-taxonomy x non-terminal-taxonomy pairing. Non-terminals that the
// terminal alphabet cannot express are listed in null_nonterminals instead
// of carrying a rule.
struct RuleSet {
    std::string name;  // convention: <terminalTax>-<nonterminalTax>-mapping
    std::string terminal_taxonomy;
    std::string nonterminal_taxonomy;
    std::vector<ProductionRule> rules;
    std::vector<std::string> null_nonterminals;
    std::string citation;
    std::string provenance;

    const ProductionRule* find_rule(const std::string& nonterminal) const;
};

struct Diagnostic {
    std::string rule;     // offending non-terminal, empty for set-level issues
    std::string symbol;   // offending symbol when one is known
    std::string message;

    std::string display() const;
};

// Parses pattern texts, expands non-terminal references (names defined
// earlier in the rule list shadow equally named terminals), and checks every
// rule-set invariant. Returns all diagnostics; rs gains resolved ASTs for
// the rules that parse.
std::vector<Diagnostic> resolve_ruleset(RuleSet& rs, const Taxonomy& terminals,
                                        const Taxonomy& nonterminals);

struct CompiledRule {
    std::string nonterminal;
    SymbolAutomaton automaton;
    bool normalized_nonempty = false;
};

// Rule set with every rule compiled; immutable and shareable across threads.
struct CompiledRuleSet {
    std::string name;
    std::string terminal_taxonomy;
    std::string nonterminal_taxonomy;
    std::vector<CompiledRule> rules;
    std::vector<std::string> null_nonterminals;
};

CompiledRuleSet compile_ruleset(const RuleSet& rs, const Taxonomy& terminals);

Taxonomy taxonomy_from_json(const std::string& text, const std::string& origin);
RuleSet ruleset_from_json(const std::string& text, const std::string& origin);

// Registry of the shipped taxonomies and rule sets plus anything loaded from
// user files. Read-only after loading; lookups cache.
class Catalog {
public:
    Catalog();

    // Builtin taxonomy names, terminal level first.
    static std::vector<std::string> builtin_taxonomies();
    static std::vector<std::string> builtin_rulesets();

    // Accepts a builtin name or a file path.
    const Taxonomy& taxonomy(const std::string& name_or_path);
    // Loads `<terminal>-<nonterminal>-mapping`, builtin or from a file path.
    RuleSet ruleset(const std::string& terminal_tax, const std::string& nonterminal_tax);
    RuleSet ruleset_by_name(const std::string& name_or_path);
    // Parses without resolving; for validation flows that want diagnostics
    // instead of exceptions.
    RuleSet ruleset_source(const std::string& name_or_path);

    // Validates without throwing: resolves a copy and returns diagnostics.
    std::vector<Diagnostic> validate(const RuleSet& rs);

    void register_taxonomy(Taxonomy taxonomy);

private:
    RuleSet finish_ruleset(RuleSet rs);

    std::map<std::string, Taxonomy> taxonomies_;
};

}  // namespace taxolex
