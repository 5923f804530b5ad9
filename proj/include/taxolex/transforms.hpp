#pragma once

#include "taxolex/exec.hpp"
#include "taxolex/sequence.hpp"

namespace taxolex {

// Run-length reductions over terminal sequences. All three share run
// structure and differ only in annotation; all are idempotent. Runs are
// maximal stretches of items with equal (terminal, qualifier); null runs
// collapse among themselves but stay match barriers downstream.

// Each run becomes one plain item.
TerminalSequence collapse(const TerminalSequence& seq);

// Runs of length >= 2 become one item flagged plus; singleton runs stay.
TerminalSequence plus_encode(const TerminalSequence& seq);

// Each run becomes one item with repeat_count = run length.
TerminalSequence numeric_encode(const TerminalSequence& seq);

// Inverse of numeric_encode on raw sequences: each item expands to
// repeat_count copies with consecutive ordinals.
TerminalSequence numeric_expand(const TerminalSequence& seq);

TerminalSequence apply_approach(const TerminalSequence& seq, Approach approach);

// Whole-dataset transform; the parallel path is an OpenMP loop over sessions.
SequenceSet transform_all(const SequenceSet& seqs, Approach approach,
                          Exec exec = Exec::Parallel);

}  // namespace taxolex
