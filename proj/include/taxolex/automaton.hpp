#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "taxolex/pattern.hpp"
#include "taxolex/sequence.hpp"
#include "taxolex/symbols.hpp"

namespace taxolex {

// One occurrence of a non-terminal inside a terminal sequence,
// as a half-open index range [start, end).
struct MatchSpan {
    std::int64_t start = 0;
    std::int64_t end = 0;
    bool operator==(const MatchSpan&) const = default;
};

// Thompson-style NFA over a terminal alphabet. Immutable after compile();
// matching is pure, so one automaton can serve many sessions concurrently.
class SymbolAutomaton {
public:
    struct Label {
        std::string name;
        std::string qualifier;  // empty label qualifier matches any item qualifier
    };
    struct State {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (label index, target)
        std::vector<std::uint32_t> eps;
    };

    // Compiles the pattern against `alphabet`. A nullable pattern is
    // tightened to its non-empty language and flagged, so the automaton
    // never accepts an empty occurrence.
    static SymbolAutomaton compile(const PatternPtr& pattern, const Taxonomy& alphabet);

    // Whole-sequence membership. Non-null symbols outside the alphabet raise
    // ValidationError; null symbols are legal input that matches nothing.
    bool full_match(const std::vector<Terminal>& seq) const;
    bool full_match(const std::vector<SequenceItem>& items) const;

    // Leftmost-longest non-overlapping scan: from the lowest unconsumed
    // index, emit the longest match starting there, resume after its end.
    // Spans never have zero length and never cross a null item.
    std::vector<MatchSpan> find_matches(const std::vector<Terminal>& seq) const;
    std::vector<MatchSpan> find_matches(const std::vector<SequenceItem>& items) const;

    bool normalized_nonempty() const { return normalized_nonempty_; }
    std::size_t state_count() const { return states_.size(); }
    const std::string& alphabet_name() const { return alphabet_name_; }
    bool in_alphabet(const std::string& terminal) const {
        return alphabet_names_.count(terminal) > 0;
    }

private:
    using StateSet = std::vector<std::uint64_t>;  // bitset over states

    StateSet make_set() const;
    void closure(StateSet& set) const;
    StateSet start_set() const;
    // Consumes `item` once from `from`.
    StateSet step(const StateSet& from, const SequenceItem& item) const;
    // Consumes `item` honoring its encoding: exactly repeat_count times, or
    // two-or-more times for a plus-flagged item (a full-run match).
    StateSet step_encoded(const StateSet& from, const SequenceItem& item) const;
    bool accepts(const StateSet& set) const;
    bool empty_set(const StateSet& set) const;
    void check_alphabet(const std::vector<SequenceItem>& items) const;

    std::vector<State> states_;
    std::vector<Label> labels_;
    std::uint32_t start_ = 0;
    std::uint32_t accept_ = 0;
    bool normalized_nonempty_ = false;
    std::string alphabet_name_;
    std::unordered_set<std::string> alphabet_names_;
};

}  // namespace taxolex
