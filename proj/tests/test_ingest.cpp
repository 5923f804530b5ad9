#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "taxolex/errors.hpp"
#include "taxolex/ingest.hpp"
#include "taxolex/io.hpp"

using namespace taxolex;
namespace fs = std::filesystem;

namespace {

struct TempFile {
    fs::path path;
    TempFile(const std::string& name, const std::string& body) {
        path = fs::temp_directory_path() / ("taxolex_ingest_" + name);
        write_text_file(path.string(), body);
    }
    ~TempFile() { std::remove(path.string().c_str()); }
};

}  // namespace

TEST_CASE("minimal csv ingest groups one session") {
    TempFile f("mini.csv",
               "user,action\n"
               "u1,open\n"
               "u1,brushed\n"
               "u1,closed\n");
    FormatConfig cfg;
    cfg.session_col = "user";
    cfg.record_col = "action";
    EventLog log = ingest(f.path.string(), cfg);
    REQUIRE(log.sessions.size() == 1);
    CHECK(log.sessions[0].events.size() == 3);
    CHECK(log.event_count() == 3);
    CHECK(log.dataset == "mini");
    CHECK(log.distinct_records == std::set<std::string>{"brushed", "closed", "open"});
}

TEST_CASE("distinct records equal a directly recomputed set") {
    TempFile f("distinct.csv",
               "session,record\n"
               "s1,a\ns1,b\ns2,a\ns2,c\ns2,c\n");
    EventLog log = ingest(f.path.string(), FormatConfig{});
    std::set<std::string> recomputed;
    for (const auto& s : log.sessions) {
        for (const auto& e : s.events) recomputed.insert(e.record);
    }
    CHECK(log.distinct_records == recomputed);
    CHECK(log.distinct_records.size() == 3);
}

TEST_CASE("rows out of timestamp order are re-sorted with ordinals reassigned") {
    TempFile f("times.csv",
               "session,record,ts\n"
               "s1,third,2021-03-01T10:00:02\n"
               "s1,first,2021-03-01T10:00:00\n"
               "s1,second,2021-03-01T10:00:01\n");
    FormatConfig cfg;
    cfg.time_col = "ts";
    EventLog log = ingest(f.path.string(), cfg);
    REQUIRE(log.sessions.size() == 1);
    const auto& events = log.sessions[0].events;
    REQUIRE(events.size() == 3);
    CHECK(events[0].record == "first");
    CHECK(events[1].record == "second");
    CHECK(events[2].record == "third");
    for (std::size_t i = 0; i < events.size(); ++i) {
        CHECK(events[i].ordinal == static_cast<std::int64_t>(i));
    }
}

TEST_CASE("timestamp ties keep file order") {
    TempFile f("ties.csv",
               "session,record,ts\n"
               "s1,a,1000\n"
               "s1,b,1000\n"
               "s1,c,999\n");
    FormatConfig cfg;
    cfg.time_col = "ts";
    EventLog log = ingest(f.path.string(), cfg);
    const auto& events = log.sessions[0].events;
    CHECK(events[0].record == "c");
    CHECK(events[1].record == "a");
    CHECK(events[2].record == "b");
}

TEST_CASE("epoch and iso timestamps parse, garbage does not") {
    CHECK(parse_timestamp_ms("1650000000000") == 1650000000000);
    CHECK(parse_timestamp_ms("1970-01-01T00:00:01") == 1000);
    CHECK(parse_timestamp_ms("1970-01-01T00:00:01.250") == 1250);
    CHECK(parse_timestamp_ms("1970-01-02") == 86400000);
    CHECK_FALSE(parse_timestamp_ms("not a time").has_value());
}

TEST_CASE("missing mandatory column fails, empty file fails") {
    TempFile f("nocol.csv", "who,what\nu1,open\n");
    CHECK_THROWS_AS(ingest(f.path.string(), FormatConfig{}), ParseError);
    TempFile empty("empty.csv", "");
    CHECK_THROWS_AS(ingest(empty.path.string(), FormatConfig{}), ParseError);
}

TEST_CASE("short rows fail with a line number unless lenient") {
    TempFile f("bad.csv",
               "session,record\n"
               "s1,a\n"
               "s1\n"
               "s1,b\n");
    try {
        ingest(f.path.string(), FormatConfig{});
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    FormatConfig lenient;
    lenient.lenient = true;
    EventLog log = ingest(f.path.string(), lenient);
    CHECK(log.event_count() == 2);
    CHECK(log.stats.rows_skipped == 1);
    REQUIRE(log.stats.warnings.size() == 1);
}

TEST_CASE("quoted csv fields hold commas and quotes") {
    TempFile f("quoted.csv",
               "session,record,note\n"
               "s1,open,\"hello, \"\"world\"\"\"\n");
    EventLog log = ingest(f.path.string(), FormatConfig{});
    CHECK(log.sessions[0].events[0].payload.at("note") == "hello, \"world\"");
}

TEST_CASE("json array and ndjson ingest") {
    TempFile fa("arr.json", R"([
        {"session": "s1", "record": "open", "attr": "age"},
        {"session": "s1", "record": "close"}
    ])");
    FormatConfig cfg;
    cfg.format = LogFormat::Json;
    cfg.attr_col = "attr";
    EventLog log = ingest(fa.path.string(), cfg);
    CHECK(log.event_count() == 2);
    CHECK(log.sessions[0].events[0].attribute == std::optional<std::string>("age"));
    CHECK_FALSE(log.sessions[0].events[1].attribute.has_value());

    TempFile fn("rows.ndjson",
                "{\"session\": \"s1\", \"record\": \"open\"}\n"
                "{\"session\": \"s2\", \"record\": \"close\"}\n");
    FormatConfig ncfg;
    ncfg.format = LogFormat::Ndjson;
    EventLog nlog = ingest(fn.path.string(), ncfg);
    CHECK(nlog.sessions.size() == 2);
}

TEST_CASE("segment by participant splits a merged log") {
    TempFile f("two.csv",
               "session,participant,record\n"
               "all,p1,a\n"
               "all,p2,b\n"
               "all,p1,c\n");
    EventLog log = ingest(f.path.string(), FormatConfig{});
    REQUIRE(log.sessions.size() == 1);
    EventLog split = segment_sessions(log, "participant");
    REQUIRE(split.sessions.size() == 2);
    CHECK(split.sessions[0].session_id == "p1");
    CHECK(split.sessions[0].events.size() == 2);
    CHECK(split.sessions[0].participant == std::optional<std::string>("p1"));
    CHECK(split.sessions[1].events.size() == 1);
}

TEST_CASE("segmentation by participant and task is a partition") {
    std::string body = "session,participant,task,record\n";
    for (int p = 1; p <= 3; ++p) {
        for (int t = 1; t <= 4; ++t) {
            for (int e = 0; e < 5; ++e) {
                body += "p" + std::to_string(p) + ",p" + std::to_string(p) + ",t" +
                        std::to_string(t) + ",evt" + std::to_string(e) + "\n";
            }
        }
    }
    TempFile f("grid.csv", body);
    EventLog log = ingest(f.path.string(), FormatConfig{});
    EventLog split = segment_sessions(log, "participant,task");
    CHECK(split.sessions.size() == 12);
    CHECK(split.event_count() == log.event_count());
    for (const auto& s : split.sessions) {
        for (std::size_t i = 0; i < s.events.size(); ++i) {
            CHECK(s.events[i].ordinal == static_cast<std::int64_t>(i));
        }
    }
}

TEST_CASE("segment on a constant key keeps one session") {
    TempFile f("const.csv",
               "session,group,record\n"
               "s1,g,a\n"
               "s2,g,b\n");
    EventLog log = ingest(f.path.string(), FormatConfig{});
    EventLog merged = segment_sessions(log, "group");
    CHECK(merged.sessions.size() == 1);
    CHECK(merged.event_count() == 2);
}

TEST_CASE("unknown segmentation key fails") {
    TempFile f("nokey.csv", "session,record\ns1,a\n");
    EventLog log = ingest(f.path.string(), FormatConfig{});
    CHECK_THROWS_AS(segment_sessions(log, "missing"), ValidationError);
}
