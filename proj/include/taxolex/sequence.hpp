#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "taxolex/symbols.hpp"

namespace taxolex {

// How a raw terminal stream is reduced before matching or mining.
enum class Approach { Raw, Collapse, Plus, Numeric };

std::string to_string(Approach a);
Approach approach_from_string(const std::string& s);

// One element of a mapped session. `repeat_count` carries the numeric-
// encoding exponent; `plus` marks a run of length >= 2 under the plus
// encoding. A raw item has repeat_count 1 and plus false.
struct SequenceItem {
    std::string terminal;
    std::string qualifier;      // empty = unqualified
    std::int64_t source_ordinal = 0;
    std::int64_t repeat_count = 1;
    bool plus = false;
    std::string attribute;      // data dimension carried over from the event

    bool is_null() const { return terminal == kNullTerminal; }

    // Content equality: what mining and transform algebra compare.
    // Ordinals and attributes are provenance, not content.
    bool same_content(const SequenceItem& o) const {
        return terminal == o.terminal && qualifier == o.qualifier &&
               repeat_count == o.repeat_count && plus == o.plus;
    }
    // Run equality: items that belong to the same maximal run.
    bool same_run_key(const SequenceItem& o) const {
        return terminal == o.terminal && qualifier == o.qualifier;
    }

    std::string display() const;
};

// Terminal translation of one participant session.
struct TerminalSequence {
    std::string session_id;
    std::vector<SequenceItem> items;
};

// All sequences of one dataset mapped against one taxonomy.
struct SequenceSet {
    std::string dataset;
    std::string taxonomy;
    Approach applied = Approach::Raw;
    std::vector<TerminalSequence> sequences;
};

}  // namespace taxolex
