#include "taxolex/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "taxolex/errors.hpp"
#include "taxolex/io.hpp"

namespace taxolex {

CoverageMode coverage_mode_from_string(const std::string& s) {
    if (s == "distinct" || s == "distinct-records") return CoverageMode::DistinctRecords;
    if (s == "events" || s == "event-weighted") return CoverageMode::EventWeighted;
    throw ValidationError("unknown coverage mode '" + s + "' (expected distinct or events)");
}

std::string to_string(CoverageMode mode) {
    return mode == CoverageMode::DistinctRecords ? "distinct-records" : "event-weighted";
}

std::string CoverageReport::rendered() const { return render_hundredths(percent_hundredths); }

CoverageReport coverage(const EventLog& log, const MappingSpec& spec, CoverageMode mode) {
    if (log.sessions.empty() || log.distinct_records.empty()) {
        throw ValidationError("coverage of an empty log is undefined");
    }
    CoverageReport report;
    report.dataset = log.dataset;
    report.taxonomy = spec.target_taxonomy;
    report.mode = mode;
    if (mode == CoverageMode::DistinctRecords) {
        report.total = static_cast<std::int64_t>(log.distinct_records.size());
        for (const auto& record : log.distinct_records) {
            if (spec.terminal_for(record) != kNullTerminal) report.covered += 1;
        }
    } else {
        for (const auto& session : log.sessions) {
            for (const auto& event : session.events) {
                report.total += 1;
                if (spec.terminal_for(event.record) != kNullTerminal) report.covered += 1;
            }
        }
    }
    report.percent_hundredths = percent_hundredths(report.covered, report.total);
    return report;
}

namespace {

std::optional<std::int64_t> mean_hundredths(const std::vector<std::int64_t>& values) {
    if (values.empty()) return std::nullopt;
    std::int64_t sum = 0;
    for (std::int64_t v : values) sum += v;
    // Half-integers are exact in double, so llround stays exact half-up.
    return std::llround(static_cast<double>(sum) / static_cast<double>(values.size()));
}

}  // namespace

CoverageTable coverage_table(const std::vector<EventLog>& logs,
                             const std::vector<MappingSpec>& specs, CoverageMode mode) {
    CoverageTable table;
    for (const auto& log : logs) {
        if (std::find(table.datasets.begin(), table.datasets.end(), log.dataset) !=
            table.datasets.end()) {
            throw ValidationError("duplicate dataset '" + log.dataset + "' in coverage table");
        }
        table.datasets.push_back(log.dataset);
    }
    for (const auto& spec : specs) {
        if (std::find(table.taxonomies.begin(), table.taxonomies.end(), spec.target_taxonomy) ==
            table.taxonomies.end()) {
            table.taxonomies.push_back(spec.target_taxonomy);
        }
    }
    std::sort(table.taxonomies.begin(), table.taxonomies.end());

    table.cells.assign(table.taxonomies.size(),
                       std::vector<std::optional<CoverageReport>>(table.datasets.size()));
    for (std::size_t r = 0; r < table.taxonomies.size(); ++r) {
        for (std::size_t c = 0; c < table.datasets.size(); ++c) {
            const MappingSpec* spec = nullptr;
            for (const auto& s : specs) {
                if (s.target_taxonomy == table.taxonomies[r] &&
                    s.source_dataset == table.datasets[c]) {
                    spec = &s;
                    break;
                }
            }
            if (spec == nullptr) {
                table.warnings.push_back("no mapping for dataset '" + table.datasets[c] +
                                         "' x taxonomy '" + table.taxonomies[r] +
                                         "'; cell excluded from averages");
                continue;
            }
            table.cells[r][c] = coverage(logs[c], *spec, mode);
        }
    }

    std::vector<std::int64_t> all;
    for (std::size_t r = 0; r < table.taxonomies.size(); ++r) {
        std::vector<std::int64_t> row;
        for (const auto& cell : table.cells[r]) {
            if (cell) row.push_back(cell->percent_hundredths);
        }
        table.row_avg_hundredths.push_back(mean_hundredths(row));
        all.insert(all.end(), row.begin(), row.end());
    }
    for (std::size_t c = 0; c < table.datasets.size(); ++c) {
        std::vector<std::int64_t> col;
        for (std::size_t r = 0; r < table.taxonomies.size(); ++r) {
            if (table.cells[r][c]) col.push_back(table.cells[r][c]->percent_hundredths);
        }
        table.col_avg_hundredths.push_back(mean_hundredths(col));
    }
    table.grand_avg_hundredths = mean_hundredths(all);
    return table;
}

DiversityReport diversity(const SequenceSet& seqs, const Taxonomy& taxonomy) {
    if (taxonomy.level != TaxonomyLevel::Terminal) {
        throw ValidationError("diversity runs against a terminal-level taxonomy");
    }
    if (seqs.taxonomy != taxonomy.name) {
        throw ValidationError("sequences are over taxonomy '" + seqs.taxonomy +
                              "', not '" + taxonomy.name + "'");
    }
    DiversityReport report;
    report.dataset = seqs.dataset;
    report.taxonomy = taxonomy.name;

    std::map<std::string, std::int64_t> tally;
    std::int64_t null_count = 0;
    bool plus_seen = false;
    for (const auto& seq : seqs.sequences) {
        for (const auto& item : seq.items) {
            // Weight by repeat_count so numeric-encoded input still counts
            // events; plus encoding has lost the counts.
            std::int64_t weight = item.repeat_count;
            plus_seen = plus_seen || item.plus;
            if (item.is_null()) {
                null_count += weight;
            } else if (!taxonomy.has_symbol(item.terminal)) {
                throw ValidationError("sequence terminal '" + item.terminal +
                                      "' is not in taxonomy '" + taxonomy.name + "'");
            } else {
                tally[item.terminal] += weight;
            }
            report.total_events += weight;
        }
    }
    if (report.total_events == 0) {
        throw ValidationError("diversity of an empty sequence set is undefined");
    }
    if (plus_seen) {
        report.warnings.push_back(
            "plus-encoded items weigh 1 each; run lengths are not recoverable");
    }

    const double total = static_cast<double>(report.total_events);
    report.null_share = static_cast<double>(null_count) / total;
    for (const auto& sym : taxonomy.symbols) {
        std::int64_t count = tally.count(sym.name) ? tally.at(sym.name) : 0;
        double share = static_cast<double>(count) / total;
        report.distribution[sym.name] = share;
        if (count == 0) report.unused.insert(sym.name);
        if (share > report.top_share) {
            report.top_share = share;
            report.top_terminal = sym.name;
        }
    }
    return report;
}

SessionStatsReport session_stats(const std::vector<SessionMatchReport>& reports,
                                 double ci_multiplier) {
    if (reports.empty()) throw ValidationError("session statistics need at least one report");
    SessionStatsReport out;
    out.ci_multiplier = ci_multiplier;

    std::set<std::string> inexpressible;
    std::map<std::string, std::vector<std::int64_t>> counts;
    for (const auto& r : reports) {
        for (const auto& [nt, count] : r.counts) counts[nt].push_back(count);
        for (const auto& nt : r.null_nonterminals) inexpressible.insert(nt);
    }
    out.inexpressible.assign(inexpressible.begin(), inexpressible.end());

    for (const auto& [nt, values] : counts) {
        SessionStats s;
        s.nonterminal = nt;
        s.n_sessions = static_cast<std::int64_t>(values.size());
        double sum = 0.0;
        for (std::int64_t v : values) sum += static_cast<double>(v);
        const double n = static_cast<double>(values.size());
        s.mean = sum / n;
        if (values.size() >= 2) {
            // Two-pass sample variance (n - 1 denominator).
            double ss = 0.0;
            for (std::int64_t v : values) {
                double d = static_cast<double>(v) - s.mean;
                ss += d * d;
            }
            double sd = std::sqrt(ss / (n - 1.0));
            s.sd = sd;
            s.ci95_halfwidth = ci_multiplier * sd / std::sqrt(n);
        }
        out.stats.push_back(std::move(s));
    }
    return out;
}

}  // namespace taxolex
