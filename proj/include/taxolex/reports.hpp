#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "taxolex/metrics.hpp"
#include "taxolex/miner.hpp"
#include "taxolex/sequence.hpp"

namespace taxolex {

const char* version();

// Terminal-sequence files: the wire between map, transform, match, diversity
// and mine. Item fields with default values are omitted.
nlohmann::json to_json(const SequenceSet& seqs);
SequenceSet sequence_set_from_json(const nlohmann::json& j, const std::string& origin);
SequenceSet load_sequence_set(const std::string& path);

nlohmann::json match_reports_to_json(const std::vector<SessionMatchReport>& reports,
                                     const std::string& ruleset, const std::string& taxonomy,
                                     Approach pre);

nlohmann::json to_json(const CoverageReport& report);
nlohmann::json to_json(const CoverageTable& table, CoverageMode mode);
std::string coverage_table_csv(const CoverageTable& table);

nlohmann::json to_json(const DiversityReport& report);
// One row per (dataset, taxonomy, terminal, share); the null share gets a
// "null" row. Stacked-bar friendly.
std::string diversity_csv(const DiversityReport& report);

nlohmann::json to_json(const SessionStatsReport& report);

nlohmann::json to_json(const MiningResult& result);

}  // namespace taxolex
