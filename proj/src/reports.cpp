#include "taxolex/reports.hpp"

#include <nlohmann/json.hpp>

#include "taxolex/errors.hpp"
#include "taxolex/io.hpp"

namespace taxolex {

using nlohmann::json;

const char* version() {
#ifdef TAXOLEX_VERSION
    return TAXOLEX_VERSION;
#else
    return "0.0.0";
#endif
}

json to_json(const SequenceSet& seqs) {
    json sessions = json::array();
    for (const auto& seq : seqs.sequences) {
        json items = json::array();
        for (const auto& item : seq.items) {
            json o{{"t", item.terminal}, {"ordinal", item.source_ordinal}};
            if (!item.qualifier.empty()) o["q"] = item.qualifier;
            if (item.repeat_count != 1) o["count"] = item.repeat_count;
            if (item.plus) o["plus"] = true;
            if (!item.attribute.empty()) o["attr"] = item.attribute;
            items.push_back(std::move(o));
        }
        sessions.push_back(json{{"session_id", seq.session_id}, {"items", std::move(items)}});
    }
    return json{{"dataset", seqs.dataset},
                {"taxonomy", seqs.taxonomy},
                {"approach", to_string(seqs.applied)},
                {"sessions", std::move(sessions)}};
}

SequenceSet sequence_set_from_json(const json& j, const std::string& origin) {
    if (!j.is_object()) throw ValidationError(origin + ": sequence file must hold an object");
    SequenceSet seqs;
    try {
        seqs.dataset = j.at("dataset").get<std::string>();
        seqs.taxonomy = j.at("taxonomy").get<std::string>();
        seqs.applied = approach_from_string(j.value("approach", "raw"));
        for (const auto& s : j.at("sessions")) {
            TerminalSequence seq;
            seq.session_id = s.at("session_id").get<std::string>();
            for (const auto& o : s.at("items")) {
                SequenceItem item;
                item.terminal = o.at("t").get<std::string>();
                item.source_ordinal = o.value("ordinal", static_cast<std::int64_t>(0));
                item.qualifier = o.value("q", "");
                item.repeat_count = o.value("count", static_cast<std::int64_t>(1));
                item.plus = o.value("plus", false);
                item.attribute = o.value("attr", "");
                if (item.repeat_count < 1) {
                    throw ValidationError(origin + ": repeat count below 1");
                }
                seq.items.push_back(std::move(item));
            }
            seqs.sequences.push_back(std::move(seq));
        }
    } catch (const json::exception& e) {
        throw ValidationError(origin + ": malformed sequence file: " + e.what());
    }
    return seqs;
}

SequenceSet load_sequence_set(const std::string& path) {
    return sequence_set_from_json(parse_json_file(path), path);
}

json match_reports_to_json(const std::vector<SessionMatchReport>& reports,
                           const std::string& ruleset, const std::string& taxonomy,
                           Approach pre) {
    json sessions = json::array();
    for (const auto& r : reports) {
        json counts = json::object();
        for (const auto& [nt, c] : r.counts) counts[nt] = c;
        json spans = json::object();
        for (const auto& [nt, list] : r.spans) {
            json arr = json::array();
            for (const auto& span : list) arr.push_back(json::array({span.start, span.end}));
            spans[nt] = std::move(arr);
        }
        sessions.push_back(json{{"session_id", r.session_id},
                                {"counts", std::move(counts)},
                                {"spans", std::move(spans)}});
    }
    json nulls = json::array();
    if (!reports.empty()) {
        for (const auto& nt : reports.front().null_nonterminals) nulls.push_back(nt);
    }
    return json{{"ruleset", ruleset},
                {"taxonomy", taxonomy},
                {"approach", to_string(pre)},
                {"null_nonterminals", std::move(nulls)},
                {"sessions", std::move(sessions)}};
}

json to_json(const CoverageReport& report) {
    return json{{"dataset", report.dataset},
                {"taxonomy", report.taxonomy},
                {"mode", to_string(report.mode)},
                {"covered", report.covered},
                {"total", report.total},
                {"percentage", report.rendered()}};
}

json to_json(const CoverageTable& table, CoverageMode mode) {
    json cells = json::object();
    for (std::size_t r = 0; r < table.taxonomies.size(); ++r) {
        json row = json::object();
        for (std::size_t c = 0; c < table.datasets.size(); ++c) {
            if (table.cells[r][c]) row[table.datasets[c]] = to_json(*table.cells[r][c]);
        }
        cells[table.taxonomies[r]] = std::move(row);
    }
    json row_avg = json::object();
    for (std::size_t r = 0; r < table.taxonomies.size(); ++r) {
        if (table.row_avg_hundredths[r]) {
            row_avg[table.taxonomies[r]] = render_hundredths(*table.row_avg_hundredths[r]);
        }
    }
    json col_avg = json::object();
    for (std::size_t c = 0; c < table.datasets.size(); ++c) {
        if (table.col_avg_hundredths[c]) {
            col_avg[table.datasets[c]] = render_hundredths(*table.col_avg_hundredths[c]);
        }
    }
    json out{{"mode", to_string(mode)},
             {"datasets", table.datasets},
             {"taxonomies", table.taxonomies},
             {"cells", std::move(cells)},
             {"row_avg", std::move(row_avg)},
             {"col_avg", std::move(col_avg)},
             {"warnings", table.warnings}};
    if (table.grand_avg_hundredths) {
        out["grand_avg"] = render_hundredths(*table.grand_avg_hundredths);
    }
    return out;
}

std::string coverage_table_csv(const CoverageTable& table) {
    std::string out = "taxonomy";
    for (const auto& d : table.datasets) out += "," + d;
    out += ",avg\n";
    for (std::size_t r = 0; r < table.taxonomies.size(); ++r) {
        out += table.taxonomies[r];
        for (std::size_t c = 0; c < table.datasets.size(); ++c) {
            out += ",";
            if (table.cells[r][c]) out += table.cells[r][c]->rendered();
        }
        out += ",";
        if (table.row_avg_hundredths[r]) out += render_hundredths(*table.row_avg_hundredths[r]);
        out += "\n";
    }
    out += "avg";
    for (std::size_t c = 0; c < table.datasets.size(); ++c) {
        out += ",";
        if (table.col_avg_hundredths[c]) out += render_hundredths(*table.col_avg_hundredths[c]);
    }
    out += ",";
    if (table.grand_avg_hundredths) out += render_hundredths(*table.grand_avg_hundredths);
    out += "\n";
    return out;
}

json to_json(const DiversityReport& report) {
    json shares = json::object();
    for (const auto& [terminal, share] : report.distribution) shares[terminal] = share;
    return json{{"dataset", report.dataset},
                {"taxonomy", report.taxonomy},
                {"total_events", report.total_events},
                {"shares", std::move(shares)},
                {"null_share", report.null_share},
                {"unused", report.unused},
                {"top_terminal", report.top_terminal},
                {"top_share", report.top_share},
                {"warnings", report.warnings}};
}

std::string diversity_csv(const DiversityReport& report) {
    std::string out = "dataset,taxonomy,terminal,share\n";
    char buf[64];
    for (const auto& [terminal, share] : report.distribution) {
        std::snprintf(buf, sizeof buf, "%.6f", share);
        out += report.dataset + "," + report.taxonomy + "," + terminal + "," + buf + "\n";
    }
    std::snprintf(buf, sizeof buf, "%.6f", report.null_share);
    out += report.dataset + "," + report.taxonomy + ",null," + buf + "\n";
    return out;
}

json to_json(const SessionStatsReport& report) {
    json stats = json::array();
    for (const auto& s : report.stats) {
        json o{{"nonterminal", s.nonterminal},
               {"n_sessions", s.n_sessions},
               {"mean", s.mean}};
        if (s.sd) o["sd"] = *s.sd;
        if (s.ci95_halfwidth) o["ci95_halfwidth"] = *s.ci95_halfwidth;
        stats.push_back(std::move(o));
    }
    return json{{"ci_multiplier", report.ci_multiplier},
                {"stats", std::move(stats)},
                {"inexpressible", report.inexpressible}};
}

json to_json(const MiningResult& result) {
    json patterns = json::array();
    for (const auto& p : result.patterns) {
        json items = json::array();
        for (const auto& item : p.items) {
            json o{{"t", item.terminal}};
            if (!item.qualifier.empty()) o["q"] = item.qualifier;
            if (item.plus) o["plus"] = true;
            if (item.repeat_count != 1) o["count"] = item.repeat_count;
            items.push_back(std::move(o));
        }
        json o{{"items", std::move(items)},
               {"support", p.support},
               {"length", p.length},
               {"rendering", p.rendering}};
        if (p.folded_rendering != p.rendering) o["folded"] = p.folded_rendering;
        patterns.push_back(std::move(o));
    }
    return json{{"dataset", result.dataset},
                {"taxonomy", result.taxonomy},
                {"approach", to_string(result.approach)},
                {"min_len", result.min_len},
                {"min_support", result.min_support},
                {"threshold_sessions", result.threshold_sessions},
                {"patterns", std::move(patterns)}};
}

}  // namespace taxolex
