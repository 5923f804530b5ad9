#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "taxolex/ingest.hpp"
#include "taxolex/sequence.hpp"
#include "taxolex/symbols.hpp"

namespace taxolex {

// One code-book entry: a distinct log record translated to a terminal, with
// the coders' rationale.
struct MappingRule {
    std::string terminal;  // taxonomy terminal or the reserved "null"
    std::string description;
};

// Code-book translating one dataset's distinct log records to one terminal
// taxonomy. Records listed in explicit_nulls are documented unmappable;
// records appearing nowhere map to null and are tallied as unlisted.
struct MappingSpec {
    std::string name;  // convention: <dataset>-<taxonomy>-mapping
    std::string source_dataset;
    std::string target_taxonomy;
    std::map<std::string, MappingRule> rules;
    std::set<std::string> explicit_nulls;

    // Non-null terminal for `record`, or "null".
    std::string terminal_for(const std::string& record) const;
};

// Throws on unknown terminals or duplicate record keys; empty descriptions
// and an empty rule map are legal and reported via `warnings`.
MappingSpec load_mapping(const std::string& path, const Taxonomy& taxonomy,
                         std::vector<std::string>* warnings = nullptr);
MappingSpec mapping_from_json(const std::string& text, const std::string& origin,
                              const Taxonomy& taxonomy,
                              std::vector<std::string>* warnings = nullptr);

struct ApplyOutcome {
    SequenceSet seqs;
    // Records absent from both rules and explicit_nulls, with event counts.
    std::map<std::string, std::int64_t> unlisted;
};

// Translates every event of every session; one item per event, in order.
ApplyOutcome apply_mapping(const EventLog& log, const MappingSpec& spec);

// Attribute continuity for one base terminal: each occurrence whose attribute
// equals the previous occurrence's attribute in the same session gets
// qualifier "same", otherwise "different" (the first is always "different").
// Sequences without attribute data pass through and add a warning.
SequenceSet qualify_inspect(const SequenceSet& seqs, const std::string& base,
                            const Taxonomy& taxonomy,
                            std::vector<std::string>* warnings = nullptr);

}  // namespace taxolex
