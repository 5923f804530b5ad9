#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "taxolex/symbols.hpp"

namespace taxolex {

// Regular expression AST over a symbol alphabet. Nodes are immutable and
// shared; substitution builds new trees around existing subtrees.
struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

struct Pattern {
    enum class Kind { Symbol, Concat, Alt, Star, Plus, Optional, Repeat };

    Kind kind = Kind::Symbol;
    std::string name;       // Symbol only
    std::string qualifier;  // Symbol only, empty = unqualified
    std::vector<PatternPtr> children;
    std::uint32_t min = 0;  // Repeat only
    std::uint32_t max = 0;  // Repeat only
};

PatternPtr make_symbol(std::string name, std::string qualifier = "");
PatternPtr make_concat(std::vector<PatternPtr> children);
PatternPtr make_alt(std::vector<PatternPtr> children);
PatternPtr make_star(PatternPtr child);
PatternPtr make_plus(PatternPtr child);
PatternPtr make_optional(PatternPtr child);
PatternPtr make_repeat(PatternPtr child, std::uint32_t min, std::uint32_t max);

bool pattern_equal(const Pattern& a, const Pattern& b);
inline bool pattern_equal(const PatternPtr& a, const PatternPtr& b) {
    return pattern_equal(*a, *b);
}

// True when the pattern can match the empty sequence.
bool nullable(const Pattern& p);

// True when the pattern can match at least one non-empty sequence.
bool can_match_nonempty(const Pattern& p);

// Pattern for L(p) minus the empty sequence. At a production-rule root this
// realizes the "star behaves as plus" occurrence semantics. Precondition:
// can_match_nonempty(p).
PatternPtr nonempty(const PatternPtr& p);

// Accepts a symbol reference found while parsing; returns false to reject it
// (reported as an unknown-symbol error naming the identifier).
using SymbolChecker = std::function<bool(const std::string& name, const std::string& qualifier)>;

// Parses the pattern syntax used throughout:
//   pattern := alt
//   alt     := concat ("|" concat)*
//   concat  := repeat+
//   repeat  := atom ("*" | "+" | "?" | "{m,n}" | "{m}")?
//   atom    := symbol | "(" alt ")"
//   symbol  := identifier (":" qualifier)?
// Whitespace and commas separate atoms; concatenation binds tighter than "|".
// The reserved `null` symbol is rejected. Throws ParseError.
PatternPtr parse_pattern(const std::string& text, const SymbolChecker& check);

// Convenience overload validating symbols against a terminal-level taxonomy.
PatternPtr parse_pattern(const std::string& text, const Taxonomy& alphabet);

// Canonical rendering; parse_pattern(pretty_print(p)) reproduces p exactly.
// Closure operators always parenthesize their operand, matching the
// "(navigate)+" display convention.
std::string pretty_print(const Pattern& p);
inline std::string pretty_print(const PatternPtr& p) { return pretty_print(*p); }

// Replaces symbol leaves via `resolve`; a non-null return substitutes the
// subtree (used to expand non-terminal references inside production rules).
PatternPtr substitute_symbols(
    const PatternPtr& p,
    const std::function<PatternPtr(const std::string& name, const std::string& qualifier)>& resolve);

}  // namespace taxolex
