#include "taxolex/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "taxolex/errors.hpp"

namespace taxolex {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream out;
    out << in.rdbuf();
    if (in.bad()) throw IoError("read failure on '" + path + "'");
    return out.str();
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << body;
    if (!out) throw IoError("write failure on '" + path + "'");
}

namespace {

// SAX-level duplicate-key detector; depth-indexed key sets.
struct KeyTracker {
    std::vector<std::set<std::string>> scopes;
    std::string duplicate;

    bool on_event(int depth, nlohmann::json::parse_event_t event, nlohmann::json& parsed) {
        using event_t = nlohmann::json::parse_event_t;
        if (event == event_t::object_start) {
            if (static_cast<int>(scopes.size()) <= depth) scopes.resize(depth + 1);
            scopes[depth].clear();
        } else if (event == event_t::key) {
            const std::string key = parsed.get<std::string>();
            if (!scopes[depth - 1].insert(key).second && duplicate.empty()) {
                duplicate = key;
            }
        }
        return true;
    }
};

}  // namespace

nlohmann::json parse_json(const std::string& text, const std::string& origin) {
    KeyTracker tracker;
    nlohmann::json result;
    try {
        result = nlohmann::json::parse(
            text,
            [&tracker](int depth, nlohmann::json::parse_event_t event, nlohmann::json& parsed) {
                return tracker.on_event(depth, event, parsed);
            });
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!tracker.duplicate.empty()) {
        throw ValidationError(origin + ": duplicate key '" + tracker.duplicate + "'");
    }
    return result;
}

nlohmann::json parse_json_file(const std::string& path) {
    return parse_json(read_text_file(path), path);
}

std::string content_digest(const std::string& body) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : body) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_digest(const std::string& path) {
    return content_digest(read_text_file(path));
}

std::int64_t percent_hundredths(std::int64_t numerator, std::int64_t denominator) {
    if (denominator <= 0) throw ValidationError("percentage with non-positive denominator");
    // 100 * 100 * numerator / denominator, rounded half-up.
    return std::llround(10000.0 * static_cast<double>(numerator) /
                        static_cast<double>(denominator));
}

std::string render_hundredths(std::int64_t hundredths) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld.%02lld",
                  static_cast<long long>(hundredths / 100),
                  static_cast<long long>(std::llabs(hundredths % 100)));
    return buf;
}

}  // namespace taxolex
