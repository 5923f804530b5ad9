#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "taxolex/ingest.hpp"
#include "taxolex/mapping.hpp"
#include "taxolex/matcher.hpp"
#include "taxolex/sequence.hpp"
#include "taxolex/symbols.hpp"

namespace taxolex {

enum class CoverageMode { DistinctRecords, EventWeighted };
CoverageMode coverage_mode_from_string(const std::string& s);
std::string to_string(CoverageMode mode);

// Fraction of the log a code-book translates to non-null terminals.
struct CoverageReport {
    std::string dataset;
    std::string taxonomy;
    CoverageMode mode = CoverageMode::DistinctRecords;
    std::int64_t covered = 0;
    std::int64_t total = 0;
    // covered/total as hundredths of a percent, rounded half-up (two-decimal
    // table rendering); percentage() is the exact ratio.
    std::int64_t percent_hundredths = 0;

    double percentage() const {
        return 100.0 * static_cast<double>(covered) / static_cast<double>(total);
    }
    std::string rendered() const;
};

CoverageReport coverage(const EventLog& log, const MappingSpec& spec,
                        CoverageMode mode = CoverageMode::DistinctRecords);

// Taxonomies x datasets coverage matrix with row/column/grand averages.
// Averages are arithmetic means of the two-decimal cell values, matching the
// printed-table convention; absent cells are excluded (with a warning).
struct CoverageTable {
    std::vector<std::string> taxonomies;  // rows
    std::vector<std::string> datasets;    // columns
    std::vector<std::vector<std::optional<CoverageReport>>> cells;
    std::vector<std::optional<std::int64_t>> row_avg_hundredths;
    std::vector<std::optional<std::int64_t>> col_avg_hundredths;
    std::optional<std::int64_t> grand_avg_hundredths;
    std::vector<std::string> warnings;
};

CoverageTable coverage_table(const std::vector<EventLog>& logs,
                             const std::vector<MappingSpec>& specs,
                             CoverageMode mode = CoverageMode::DistinctRecords);

// Distribution of emitted terminals: per-terminal event shares, never-used
// terminals, and the most popular terminal's share. Null items are tallied
// apart from the taxonomy terminals.
struct DiversityReport {
    std::string dataset;
    std::string taxonomy;
    std::int64_t total_events = 0;
    std::map<std::string, double> distribution;  // terminal -> share of events
    double null_share = 0.0;
    std::set<std::string> unused;
    std::string top_terminal;
    double top_share = 0.0;
    std::vector<std::string> warnings;
};

DiversityReport diversity(const SequenceSet& seqs, const Taxonomy& taxonomy);

// Per-non-terminal session statistics: mean, sample standard deviation and a
// normal-approximation 95% interval half-width (multiplier * sd / sqrt(n)).
struct SessionStats {
    std::string nonterminal;
    std::int64_t n_sessions = 0;
    double mean = 0.0;
    std::optional<double> sd;              // n >= 2
    std::optional<double> ci95_halfwidth;  // n >= 2
};

struct SessionStatsReport {
    std::vector<SessionStats> stats;               // ordered by non-terminal name
    std::vector<std::string> inexpressible;        // null non-terminals, no counts
    double ci_multiplier = 1.96;
};

SessionStatsReport session_stats(const std::vector<SessionMatchReport>& reports,
                                 double ci_multiplier = 1.96);

}  // namespace taxolex
