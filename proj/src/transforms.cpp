#include "taxolex/transforms.hpp"

#include <cstddef>

#include "taxolex/errors.hpp"

namespace taxolex {

namespace {

// Applies `emit(begin, end)` to every maximal run [begin, end).
template <typename Emit>
void for_each_run(const TerminalSequence& seq, Emit emit) {
    std::size_t i = 0;
    while (i < seq.items.size()) {
        std::size_t j = i + 1;
        while (j < seq.items.size() && seq.items[j].same_run_key(seq.items[i])) ++j;
        emit(i, j);
        i = j;
    }
}

}  // namespace

TerminalSequence collapse(const TerminalSequence& seq) {
    TerminalSequence out;
    out.session_id = seq.session_id;
    for_each_run(seq, [&](std::size_t begin, std::size_t) {
        SequenceItem item = seq.items[begin];
        item.repeat_count = 1;
        item.plus = false;
        out.items.push_back(std::move(item));
    });
    return out;
}

TerminalSequence plus_encode(const TerminalSequence& seq) {
    TerminalSequence out;
    out.session_id = seq.session_id;
    for_each_run(seq, [&](std::size_t begin, std::size_t end) {
        SequenceItem item = seq.items[begin];
        item.repeat_count = 1;
        // A run already marked plus stays a run of two-or-more.
        item.plus = item.plus || end - begin >= 2;
        out.items.push_back(std::move(item));
    });
    return out;
}

TerminalSequence numeric_encode(const TerminalSequence& seq) {
    TerminalSequence out;
    out.session_id = seq.session_id;
    for_each_run(seq, [&](std::size_t begin, std::size_t end) {
        SequenceItem item = seq.items[begin];
        std::int64_t total = 0;
        for (std::size_t k = begin; k < end; ++k) total += seq.items[k].repeat_count;
        item.repeat_count = total;
        item.plus = false;
        out.items.push_back(std::move(item));
    });
    return out;
}

TerminalSequence numeric_expand(const TerminalSequence& seq) {
    TerminalSequence out;
    out.session_id = seq.session_id;
    for (const auto& item : seq.items) {
        if (item.repeat_count < 1) {
            throw ValidationError("repeat_count below 1 in session '" + seq.session_id + "'");
        }
        for (std::int64_t k = 0; k < item.repeat_count; ++k) {
            SequenceItem copy = item;
            copy.repeat_count = 1;
            copy.source_ordinal = item.source_ordinal + k;
            out.items.push_back(std::move(copy));
        }
    }
    return out;
}

TerminalSequence apply_approach(const TerminalSequence& seq, Approach approach) {
    switch (approach) {
        case Approach::Raw: return seq;
        case Approach::Collapse: return collapse(seq);
        case Approach::Plus: return plus_encode(seq);
        case Approach::Numeric: return numeric_encode(seq);
    }
    return seq;
}

SequenceSet transform_all(const SequenceSet& seqs, Approach approach, Exec exec) {
    if (seqs.applied != Approach::Raw && seqs.applied != approach) {
        throw ValidationError("sequences already carry the '" + to_string(seqs.applied) +
                              "' encoding; cannot re-encode as '" + to_string(approach) + "'");
    }
    SequenceSet out;
    out.dataset = seqs.dataset;
    out.taxonomy = seqs.taxonomy;
    out.applied = approach;
    out.sequences.resize(seqs.sequences.size());
    const std::int64_t n = static_cast<std::int64_t>(seqs.sequences.size());
    if (exec == Exec::Parallel) {
        #pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < n; ++i) {
            out.sequences[static_cast<std::size_t>(i)] =
                apply_approach(seqs.sequences[static_cast<std::size_t>(i)], approach);
        }
    } else {
        for (std::int64_t i = 0; i < n; ++i) {
            out.sequences[static_cast<std::size_t>(i)] =
                apply_approach(seqs.sequences[static_cast<std::size_t>(i)], approach);
        }
    }
    return out;
}

}  // namespace taxolex
