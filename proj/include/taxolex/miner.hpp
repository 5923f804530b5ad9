#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "taxolex/exec.hpp"
#include "taxolex/sequence.hpp"

namespace taxolex {

// A contiguous terminal sequence common to enough sessions. Item equality
// includes the plus flag (plus approach) or the exact repeat count (numeric
// approach); patterns never contain null.
struct MinedPattern {
    std::vector<SequenceItem> items;
    std::int64_t support = 0;  // sessions containing the pattern
    std::int64_t length = 0;
    std::string rendering;         // "(delete, brush)", "(filter2, select3)"
    std::string folded_rendering;  // presentation-only fold of a repeated core,
                                   // e.g. "((brush+, delete)+, brush+)"
};

struct MiningResult {
    std::string dataset;
    std::string taxonomy;
    Approach approach = Approach::Plus;
    std::int64_t min_len = 2;
    double min_support = 1.0;
    std::int64_t threshold_sessions = 0;
    std::vector<MinedPattern> patterns;  // maximal, sorted by length then items
};

std::string render_pattern(const std::vector<SequenceItem>& items);
// Detects a repeated leading core (>= 2 blocks) and folds it for display;
// returns render_pattern(items) when nothing folds.
std::string fold_pattern(const std::vector<SequenceItem>& items);

// Maximal contiguous patterns present in at least ceil(min_support * n)
// sessions: present means contiguous occurrence; maximal means no one-item
// left/right extension stays at or above the threshold. Candidates are
// enumerated level-wise from the shortest sessions (a supported pattern must
// occur in one of the n - threshold + 1 shortest); support counting is the
// OpenMP-parallel kernel.
MiningResult common_subsequences(const SequenceSet& seqs, Approach approach,
                                 std::int64_t min_len = 2, double min_support = 1.0,
                                 Exec exec = Exec::Parallel);

// Patterns (item-exact) present in every result set. Sets must share a
// terminal taxonomy; supports become the minimum across sets.
std::vector<MinedPattern> cross_dataset_intersection(const std::vector<MiningResult>& sets);

}  // namespace taxolex
