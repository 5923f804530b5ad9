#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace taxolex {

// One interaction log record after normalization.
struct Event {
    std::string session_id;
    std::int64_t ordinal = 0;  // 0-based, strictly increasing within a session
    std::optional<std::int64_t> timestamp_ms;
    std::string record;  // distinct log-record category, e.g. filter_changed
    std::optional<std::string> attribute;
    std::map<std::string, std::string> payload;  // remaining columns/fields
};

// One participant's ordered trace for one task.
struct Session {
    std::string session_id;
    std::optional<std::string> participant;
    std::optional<std::string> task;
    std::vector<Event> events;
};

struct IngestStats {
    std::int64_t rows_read = 0;
    std::int64_t rows_skipped = 0;  // lenient mode only
    std::vector<std::string> warnings;
};

struct EventLog {
    std::string dataset;
    std::vector<Session> sessions;
    std::set<std::string> distinct_records;
    IngestStats stats;

    std::int64_t event_count() const;
};

enum class LogFormat { Csv, Json, Ndjson };
LogFormat log_format_from_string(const std::string& s);

// Column/field names binding a concrete file to the event model.
struct FormatConfig {
    LogFormat format = LogFormat::Csv;
    std::string dataset;  // defaults to the file stem
    std::string session_col = "session";
    std::string record_col = "record";
    std::optional<std::string> time_col;
    std::optional<std::string> attr_col;
    bool lenient = false;  // skip unparseable rows (counted) instead of failing
};

// Reads a log file, groups events into sessions, orders them by timestamp
// when one is configured (stable: ties keep file order) and reassigns
// ordinals. Throws IoError/ParseError; with lenient set, bad rows are
// skipped and counted instead.
EventLog ingest(const std::string& path, const FormatConfig& config);

// Re-partitions sessions by one or more event-level keys (comma separated;
// payload keys or the specials `session_id` / `record`). Event order is
// preserved inside each partition.
EventLog segment_sessions(const EventLog& log, const std::string& key);

std::optional<std::int64_t> parse_timestamp_ms(const std::string& text);

}  // namespace taxolex
