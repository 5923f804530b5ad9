#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "taxolex/automaton.hpp"
#include "taxolex/catalog.hpp"
#include "taxolex/exec.hpp"
#include "taxolex/sequence.hpp"

namespace taxolex {

// Per-session occurrence counts and spans for every non-terminal of a rule
// set. Non-terminals the alphabet cannot express appear only in
// null_nonterminals (inexpressible, not zero). Spans index into the
// transformed sequence.
struct SessionMatchReport {
    std::string session_id;
    std::map<std::string, std::int64_t> counts;
    std::map<std::string, std::vector<MatchSpan>> spans;
    std::vector<std::string> null_nonterminals;
};

// Applies `pre` (collapse by default, the choice used for occurrence
// counting), then scans the sequence once per rule. Each non-terminal is
// matched independently over the full sequence.
SessionMatchReport match_session(const TerminalSequence& seq, const CompiledRuleSet& rules,
                                 Approach pre = Approach::Collapse);

// match_session over every session, order preserving. The parallel path is
// an OpenMP loop over sessions sharing the read-only automata.
std::vector<SessionMatchReport> match_dataset(const SequenceSet& seqs,
                                              const CompiledRuleSet& rules,
                                              Approach pre = Approach::Collapse,
                                              Exec exec = Exec::Parallel);

}  // namespace taxolex
