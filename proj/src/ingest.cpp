#include "taxolex/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "taxolex/errors.hpp"
#include "taxolex/io.hpp"

namespace taxolex {

std::int64_t EventLog::event_count() const {
    std::int64_t n = 0;
    for (const auto& s : sessions) n += static_cast<std::int64_t>(s.events.size());
    return n;
}

LogFormat log_format_from_string(const std::string& s) {
    if (s == "csv") return LogFormat::Csv;
    if (s == "json") return LogFormat::Json;
    if (s == "ndjson") return LogFormat::Ndjson;
    throw ValidationError("unknown log format '" + s + "' (expected csv, json or ndjson)");
}

std::optional<std::int64_t> parse_timestamp_ms(const std::string& text) {
    if (text.empty()) return std::nullopt;
    bool digits = std::all_of(text.begin(), text.end(), [](unsigned char c) {
        return std::isdigit(c);
    });
    if (digits) {
        try {
            return std::stoll(text);  // epoch milliseconds
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    // ISO-8601: YYYY-MM-DD[T ]HH:MM:SS[.fff][Z]
    std::tm tm{};
    int year, month, day, hour = 0, minute = 0, second = 0;
    char sep = 'T';
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%n", &year, &month, &day, &sep,
                    &hour, &minute, &second, &consumed) < 7) {
        if (std::sscanf(text.c_str(), "%4d-%2d-%2d%n", &year, &month, &day, &consumed) < 3) {
            return std::nullopt;
        }
        hour = minute = second = 0;
    }
    tm.tm_year = year - 1900;
    tm.tm_mon = month - 1;
    tm.tm_mday = day;
    tm.tm_hour = hour;
    tm.tm_min = minute;
    tm.tm_sec = second;
    std::int64_t ms = 0;
    if (consumed < static_cast<int>(text.size()) && text[consumed] == '.') {
        int frac = 0, digits_read = 0;
        ++consumed;
        while (consumed < static_cast<int>(text.size()) &&
               std::isdigit(static_cast<unsigned char>(text[consumed])) && digits_read < 3) {
            frac = frac * 10 + (text[consumed] - '0');
            ++digits_read;
            ++consumed;
        }
        for (int i = digits_read; i < 3; ++i) frac *= 10;
        ms = frac;
    }
    std::time_t base = timegm(&tm);  // treated as UTC; zone suffixes beyond Z unsupported
    return static_cast<std::int64_t>(base) * 1000 + ms;
}

namespace {

// RFC-4180-ish CSV: quoted fields may hold commas, newlines and doubled quotes.
std::vector<std::vector<std::string>> parse_csv(const std::string& body) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t i = 0;
    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        if (row.size() > 1 || !row[0].empty()) rows.push_back(std::move(row));
        row.clear();
    };
    while (i < body.size()) {
        char c = body[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < body.size() && body[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && !field_started) {
            quoted = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() || !row.empty() || field_started) end_row();
        } else if (c != '\r') {
            field += c;
            field_started = true;
        }
        ++i;
    }
    if (!field.empty() || !row.empty() || field_started) end_row();
    return rows;
}

struct RawEvent {
    std::string session;
    std::string record;
    std::optional<std::int64_t> timestamp;
    std::optional<std::string> attribute;
    std::map<std::string, std::string> payload;
};

void finalize(EventLog& log, std::vector<RawEvent> raw, const FormatConfig& config) {
    // Group by session key in first-appearance order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<RawEvent>> groups;
    for (auto& e : raw) {
        auto [it, inserted] = groups.try_emplace(e.session);
        if (inserted) order.push_back(e.session);
        it->second.push_back(std::move(e));
    }
    for (const auto& key : order) {
        auto& events = groups[key];
        bool timed = config.time_col.has_value();
        if (timed) {
            std::stable_sort(events.begin(), events.end(),
                             [](const RawEvent& a, const RawEvent& b) {
                                 return a.timestamp.value_or(0) < b.timestamp.value_or(0);
                             });
        }
        Session session;
        session.session_id = key;
        std::int64_t ordinal = 0;
        for (auto& e : events) {
            Event ev;
            ev.session_id = key;
            ev.ordinal = ordinal++;
            ev.timestamp_ms = e.timestamp;
            ev.record = std::move(e.record);
            ev.attribute = std::move(e.attribute);
            ev.payload = std::move(e.payload);
            log.distinct_records.insert(ev.record);
            session.events.push_back(std::move(ev));
        }
        // Participant/task become session fields when constant across events.
        auto constant_payload = [&](const char* field) -> std::optional<std::string> {
            std::optional<std::string> value;
            for (const auto& ev : session.events) {
                auto it = ev.payload.find(field);
                if (it == ev.payload.end()) return std::nullopt;
                if (value && *value != it->second) return std::nullopt;
                value = it->second;
            }
            return value;
        };
        session.participant = constant_payload("participant");
        session.task = constant_payload("task");
        log.sessions.push_back(std::move(session));
    }
}

EventLog ingest_csv(const std::string& path, const std::string& body, const FormatConfig& config) {
    EventLog log;
    auto rows = parse_csv(body);
    if (rows.empty()) throw ParseError(path + ": empty file");
    const std::vector<std::string>& header = rows[0];
    auto column = [&](const std::string& name) -> int {
        auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<int>(it - header.begin());
    };
    int session_ix = column(config.session_col);
    int record_ix = column(config.record_col);
    if (session_ix < 0) throw ParseError(path + ": missing column '" + config.session_col + "'");
    if (record_ix < 0) throw ParseError(path + ": missing column '" + config.record_col + "'");
    int time_ix = config.time_col ? column(*config.time_col) : -1;
    if (config.time_col && time_ix < 0) {
        throw ParseError(path + ": missing column '" + *config.time_col + "'");
    }
    int attr_ix = config.attr_col ? column(*config.attr_col) : -1;
    if (config.attr_col && attr_ix < 0) {
        throw ParseError(path + ": missing column '" + *config.attr_col + "'");
    }

    std::vector<RawEvent> raw;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        log.stats.rows_read += 1;
        auto reject = [&](const std::string& why) {
            if (!config.lenient) {
                throw ParseError(path + " line " + std::to_string(r + 1) + ": " + why);
            }
            log.stats.rows_skipped += 1;
            log.stats.warnings.push_back("line " + std::to_string(r + 1) + " skipped: " + why);
        };
        if (cells.size() != header.size()) {
            reject("expected " + std::to_string(header.size()) + " fields, got " +
                   std::to_string(cells.size()));
            continue;
        }
        RawEvent e;
        e.session = cells[static_cast<std::size_t>(session_ix)];
        e.record = cells[static_cast<std::size_t>(record_ix)];
        if (e.record.empty()) {
            reject("empty record field");
            continue;
        }
        if (time_ix >= 0) {
            const std::string& ts = cells[static_cast<std::size_t>(time_ix)];
            e.timestamp = parse_timestamp_ms(ts);
            if (!e.timestamp && !ts.empty()) {
                reject("unparseable timestamp '" + ts + "'");
                continue;
            }
        }
        if (attr_ix >= 0 && !cells[static_cast<std::size_t>(attr_ix)].empty()) {
            e.attribute = cells[static_cast<std::size_t>(attr_ix)];
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            int ci = static_cast<int>(c);
            if (ci == session_ix || ci == record_ix || ci == time_ix || ci == attr_ix) continue;
            e.payload[header[c]] = cells[c];
        }
        raw.push_back(std::move(e));
    }
    finalize(log, std::move(raw), config);
    return log;
}

EventLog ingest_json(const std::string& path, const std::string& body,
                     const FormatConfig& config, bool ndjson) {
    EventLog log;
    std::vector<nlohmann::json> objects;
    if (ndjson) {
        std::istringstream in(body);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            try {
                objects.push_back(parse_json(line, path + " line " + std::to_string(line_no)));
            } catch (const ParseError&) {
                if (!config.lenient) throw;
                log.stats.rows_skipped += 1;
                log.stats.warnings.push_back("line " + std::to_string(line_no) +
                                             " skipped: bad JSON");
            }
        }
    } else {
        nlohmann::json root = parse_json(body, path);
        if (!root.is_array()) throw ParseError(path + ": expected a JSON array of objects");
        for (auto& o : root) objects.push_back(std::move(o));
    }
    if (objects.empty()) throw ParseError(path + ": empty file");

    std::vector<RawEvent> raw;
    std::size_t index = 0;
    for (const auto& o : objects) {
        ++index;
        log.stats.rows_read += 1;
        auto reject = [&](const std::string& why) {
            if (!config.lenient) {
                throw ParseError(path + " object " + std::to_string(index) + ": " + why);
            }
            log.stats.rows_skipped += 1;
            log.stats.warnings.push_back("object " + std::to_string(index) + " skipped: " + why);
        };
        if (!o.is_object()) {
            reject("not an object");
            continue;
        }
        auto field = [&](const std::string& key) -> std::optional<std::string> {
            auto it = o.find(key);
            if (it == o.end() || it->is_null()) return std::nullopt;
            if (it->is_string()) return it->get<std::string>();
            return it->dump();
        };
        auto session = field(config.session_col);
        auto record = field(config.record_col);
        if (!session) {
            reject("missing field '" + config.session_col + "'");
            continue;
        }
        if (!record || record->empty()) {
            reject("missing field '" + config.record_col + "'");
            continue;
        }
        RawEvent e;
        e.session = *session;
        e.record = *record;
        if (config.time_col) {
            auto it = o.find(*config.time_col);
            if (it != o.end() && it->is_number()) {
                e.timestamp = it->get<std::int64_t>();
            } else if (auto ts = field(*config.time_col)) {
                e.timestamp = parse_timestamp_ms(*ts);
                if (!e.timestamp) {
                    reject("unparseable timestamp '" + *ts + "'");
                    continue;
                }
            }
        }
        if (config.attr_col) e.attribute = field(*config.attr_col);
        for (auto it = o.begin(); it != o.end(); ++it) {
            const std::string& key = it.key();
            if (key == config.session_col || key == config.record_col) continue;
            if (config.time_col && key == *config.time_col) continue;
            if (config.attr_col && key == *config.attr_col) continue;
            e.payload[key] = it->is_string() ? it->get<std::string>() : it->dump();
        }
        raw.push_back(std::move(e));
    }
    finalize(log, std::move(raw), config);
    return log;
}

}  // namespace

EventLog ingest(const std::string& path, const FormatConfig& config) {
    std::string body = read_text_file(path);
    EventLog log;
    switch (config.format) {
        case LogFormat::Csv:
            log = ingest_csv(path, body, config);
            break;
        case LogFormat::Json:
            log = ingest_json(path, body, config, false);
            break;
        case LogFormat::Ndjson:
            log = ingest_json(path, body, config, true);
            break;
    }
    log.dataset = !config.dataset.empty()
                      ? config.dataset
                      : std::filesystem::path(path).stem().string();
    return log;
}

EventLog segment_sessions(const EventLog& log, const std::string& key) {
    std::vector<std::string> parts;
    {
        std::string cur;
        for (char c : key) {
            if (c == ',') {
                if (!cur.empty()) parts.push_back(cur);
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                cur += c;
            }
        }
        if (!cur.empty()) parts.push_back(cur);
    }
    if (parts.empty()) throw ValidationError("empty segmentation key");

    auto key_of = [&](const Event& e) -> std::string {
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const std::string& p = parts[i];
            std::string value;
            if (p == "session_id") {
                value = e.session_id;
            } else if (p == "record") {
                value = e.record;
            } else {
                auto it = e.payload.find(p);
                if (it == e.payload.end()) {
                    throw ValidationError("unknown segmentation key '" + p + "'");
                }
                value = it->second;
            }
            if (i > 0) out += "/";
            out += value;
        }
        return out;
    };

    EventLog out;
    out.dataset = log.dataset;
    out.distinct_records = log.distinct_records;
    out.stats = log.stats;

    std::vector<std::string> order;
    std::map<std::string, Session> groups;
    for (const auto& session : log.sessions) {
        for (const auto& e : session.events) {
            std::string k = key_of(e);
            auto [it, inserted] = groups.try_emplace(k);
            if (inserted) {
                order.push_back(k);
                it->second.session_id = k;
            }
            Event copy = e;
            copy.session_id = k;
            copy.ordinal = static_cast<std::int64_t>(it->second.events.size());
            it->second.events.push_back(std::move(copy));
        }
    }
    for (const auto& k : order) {
        Session& s = groups[k];
        auto constant_payload = [&](const char* field) -> std::optional<std::string> {
            std::optional<std::string> value;
            for (const auto& ev : s.events) {
                auto it = ev.payload.find(field);
                if (it == ev.payload.end()) return std::nullopt;
                if (value && *value != it->second) return std::nullopt;
                value = it->second;
            }
            return value;
        };
        s.participant = constant_payload("participant");
        s.task = constant_payload("task");
        out.sessions.push_back(std::move(s));
    }
    return out;
}

}  // namespace taxolex
