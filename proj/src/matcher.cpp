#include "taxolex/matcher.hpp"

#include "taxolex/errors.hpp"
#include "taxolex/transforms.hpp"

namespace taxolex {

SessionMatchReport match_session(const TerminalSequence& seq, const CompiledRuleSet& rules,
                                 Approach pre) {
    TerminalSequence transformed = apply_approach(seq, pre);
    SessionMatchReport report;
    report.session_id = seq.session_id;
    report.null_nonterminals = rules.null_nonterminals;
    for (const auto& rule : rules.rules) {
        std::vector<MatchSpan> spans = rule.automaton.find_matches(transformed.items);
        report.counts[rule.nonterminal] = static_cast<std::int64_t>(spans.size());
        report.spans[rule.nonterminal] = std::move(spans);
    }
    return report;
}

std::vector<SessionMatchReport> match_dataset(const SequenceSet& seqs,
                                              const CompiledRuleSet& rules, Approach pre,
                                              Exec exec) {
    if (seqs.taxonomy != rules.terminal_taxonomy) {
        throw ValidationError("sequences are over taxonomy '" + seqs.taxonomy +
                              "' but rule set '" + rules.name + "' expects '" +
                              rules.terminal_taxonomy + "'");
    }
    if (seqs.applied != Approach::Raw && seqs.applied != pre) {
        throw ValidationError("sequences already carry the '" + to_string(seqs.applied) +
                              "' encoding; cannot match with pre-transform '" +
                              to_string(pre) + "'");
    }
    Approach effective = seqs.applied == pre ? Approach::Raw : pre;

    std::vector<SessionMatchReport> reports(seqs.sequences.size());
    const std::int64_t n = static_cast<std::int64_t>(seqs.sequences.size());
    if (exec == Exec::Parallel) {
        // Exceptions must not unwind out of the parallel region; capture the
        // first one and rethrow afterwards.
        std::string error;
        #pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < n; ++i) {
            try {
                reports[static_cast<std::size_t>(i)] =
                    match_session(seqs.sequences[static_cast<std::size_t>(i)], rules, effective);
            } catch (const std::exception& e) {
                #pragma omp critical
                if (error.empty()) error = e.what();
            }
        }
        if (!error.empty()) throw ValidationError(error);
    } else {
        for (std::int64_t i = 0; i < n; ++i) {
            reports[static_cast<std::size_t>(i)] =
                match_session(seqs.sequences[static_cast<std::size_t>(i)], rules, effective);
        }
    }
    return reports;
}

}  // namespace taxolex
