#include "taxolex/fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <random>

#include <nlohmann/json.hpp>

#include "taxolex/catalog.hpp"
#include "taxolex/errors.hpp"
#include "taxolex/io.hpp"

namespace taxolex::fixtures {

namespace {

using nlohmann::json;

// mt19937_64 output is pinned by the standard; std::uniform_int_distribution
// is not, so draws go through plain modulo.
struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    std::int64_t next(std::int64_t n) {
        return static_cast<std::int64_t>(engine() % static_cast<std::uint64_t>(n));
    }
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

struct CsvBuilder {
    std::string body;
    explicit CsvBuilder(const std::vector<std::string>& header) { row(header); }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) body += ',';
            body += csv_escape(cells[i]);
        }
        body += '\n';
    }
};

// Code-book mapping each record name to the equally named terminal.
json identity_mapping(const std::string& dataset, const Taxonomy& taxonomy) {
    json rules = json::object();
    for (const auto& sym : taxonomy.symbols) {
        rules[sym.name] = {{"terminal", sym.name},
                           {"description", "fixture record named after the terminal"}};
    }
    return json{{"name", dataset + "-" + taxonomy.name + "-mapping"},
                {"source_dataset", dataset},
                {"target_taxonomy", taxonomy.name},
                {"rules", rules},
                {"explicit_nulls", json::array()}};
}

std::int64_t param(const FixtureSpec& spec, const std::string& key, std::int64_t fallback) {
    auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
}

std::string spec_json(const FixtureSpec& spec) {
    json j{{"name", spec.name}, {"kind", spec.kind}, {"seed", spec.seed}};
    json params = json::object();
    for (const auto& [k, v] : spec.params) params[k] = v;
    j["params"] = params;
    return j.dump(2) + "\n";
}

// --------------------------------------------------------------------------
// wall: 24 sessions over the 11 Wall record categories, attribute column
// included so inspect-qualification has something to chew on.

const char* kWallRecords[] = {
    "mouseover_from_list",
    "scroll_politician_list",
    "scatterplot_pan_zoom",
    "add_to_list_via_card_click",
    "remove_from_list_via_card_click",
    "add_to_list_via_scatterplot_click",
    "remove_from_list_via_scatterplot_click",
    "filter_changed",
    "change_attribute_distribution",
    "axis_attribute_changed",
    "attribute_weight_changed",
};
// Cumulative weights out of 100, matching the heavy-mouseover shape of the
// source system.
const int kWallWeights[] = {30, 45, 60, 65, 70, 75, 80, 90, 95, 98, 100};

const char* kWallAttributes[] = {"age", "party", "state", "votes", "experience"};

bool wall_record_has_attribute(const std::string& record) {
    return record == "mouseover_from_list" || record == "filter_changed" ||
           record == "change_attribute_distribution" || record == "axis_attribute_changed" ||
           record == "attribute_weight_changed";
}

std::vector<GeneratedFile> gen_wall(const FixtureSpec& spec) {
    const std::int64_t session_count = param(spec, "sessions", 24);
    const std::int64_t min_len = param(spec, "min_events", 18);
    const std::int64_t max_len = param(spec, "max_events", 36);
    Rng rng(spec.seed);

    CsvBuilder csv({"participant", "record", "attr"});
    for (std::int64_t s = 0; s < session_count; ++s) {
        char pid[8];
        std::snprintf(pid, sizeof pid, "p%02lld", static_cast<long long>(s + 1));
        std::vector<std::string> records;
        if (s == 0) {
            // First participant touches every record so the dataset-wide
            // distinct count is exact by construction.
            for (const char* r : kWallRecords) records.push_back(r);
        }
        std::int64_t len = min_len + rng.next(max_len - min_len + 1);
        while (static_cast<std::int64_t>(records.size()) < len) {
            int roll = static_cast<int>(rng.next(100));
            for (std::size_t i = 0; i < std::size(kWallWeights); ++i) {
                if (roll < kWallWeights[i]) {
                    records.push_back(kWallRecords[i]);
                    break;
                }
            }
        }
        for (const auto& r : records) {
            std::string attr;
            if (wall_record_has_attribute(r)) {
                attr = kWallAttributes[rng.next(std::size(kWallAttributes))];
            }
            csv.row({pid, r, attr});
        }
    }

    json expected{
        {"sessions", session_count},
        {"distinct_records", static_cast<std::int64_t>(std::size(kWallRecords))},
        {"coverage_percent_hundredths",
         {{"amar2005", 10000}, {"brehmermunzner2013", 10000}, {"gotzzhou2009", 10000},
          {"yi2007", 10000}}},
        {"note", "all records carry a non-null translation in every shipped wall2020 code-book"}};

    return {{spec.name + "/wall_fixture.csv", csv.body},
            {spec.name + "/expected.json", expected.dump(2) + "\n"}};
}

// --------------------------------------------------------------------------
// ratio-pair: two synthetic logs whose distinct-record counts reconstruct the
// published coverage ratios as small integers.

std::vector<GeneratedFile> gen_ratio_pair(const FixtureSpec& spec) {
    Rng rng(spec.seed);
    Catalog catalog;

    struct DatasetPlan {
        std::string dataset;
        std::vector<std::string> records;
        std::int64_t sessions;
        std::int64_t extra_events;
        std::map<std::string, std::int64_t> covered;  // taxonomy -> leading records mapped
    };

    std::vector<std::string> bh_records;
    for (int i = 0; i < 89; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "bh_r%02d", i);
        bh_records.push_back(buf);
    }
    bh_records.push_back("reset");  // unmappable interface reset, an explicit null
    std::vector<std::string> lh_records;
    for (int i = 0; i < 12; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "lh_r%02d", i);
        lh_records.push_back(buf);
    }

    std::vector<DatasetPlan> plans = {
        {"battleheer_shaped", bh_records, 4, 30,
         {{"amar2005", 42}, {"brehmermunzner2013", 62}, {"gotzzhou2009", 61}, {"yi2007", 67}}},
        {"liuheer_shaped", lh_records, 2, 20,
         {{"amar2005", 6}, {"brehmermunzner2013", 12}, {"gotzzhou2009", 12}, {"yi2007", 11}}},
    };

    std::vector<GeneratedFile> out;
    json expected_cells = json::object();
    for (const auto& plan : plans) {
        CsvBuilder csv({"session", "record"});
        // Every record once (exact distinct count), then random padding.
        std::vector<std::string> sorted_records = plan.records;
        std::sort(sorted_records.begin(), sorted_records.end());
        std::int64_t i = 0;
        for (const auto& r : plan.records) {
            csv.row({"u" + std::to_string(i % plan.sessions + 1), r});
            ++i;
        }
        for (std::int64_t e = 0; e < plan.extra_events; ++e) {
            const std::string& r =
                plan.records[static_cast<std::size_t>(rng.next(
                    static_cast<std::int64_t>(plan.records.size())))];
            csv.row({"u" + std::to_string(rng.next(plan.sessions) + 1), r});
        }
        out.push_back({spec.name + "/" + plan.dataset + ".csv", csv.body});

        json dataset_cells = json::object();
        for (const auto& [tax_name, covered] : plan.covered) {
            const Taxonomy& taxonomy = catalog.taxonomy(tax_name);
            json rules = json::object();
            json nulls = json::array();
            std::int64_t terminal_count = static_cast<std::int64_t>(taxonomy.symbols.size());
            for (std::int64_t r = 0; r < static_cast<std::int64_t>(sorted_records.size()); ++r) {
                const std::string& record = sorted_records[static_cast<std::size_t>(r)];
                if (r < covered) {
                    const std::string& terminal =
                        taxonomy.symbols[static_cast<std::size_t>(r % terminal_count)].name;
                    rules[record] = {{"terminal", terminal},
                                     {"description", "fixture translation cycling the roster"}};
                } else {
                    nulls.push_back(record);
                }
            }
            json mapping{{"name", plan.dataset + "-" + tax_name + "-mapping"},
                         {"source_dataset", plan.dataset},
                         {"target_taxonomy", tax_name},
                         {"rules", rules},
                         {"explicit_nulls", nulls}};
            out.push_back({spec.name + "/" + plan.dataset + "-" + tax_name + "-mapping.json",
                           mapping.dump(2) + "\n"});
            dataset_cells[tax_name] = {{"covered", covered},
                                       {"total", static_cast<std::int64_t>(plan.records.size())}};
        }
        expected_cells[plan.dataset] = dataset_cells;
    }
    json expected{{"cells", expected_cells},
                  {"note", "ratios reconstruct the published per-cell coverage percentages"}};
    out.push_back({spec.name + "/expected.json", expected.dump(2) + "\n"});
    return out;
}

// --------------------------------------------------------------------------
// tuned-stats: 16 sessions with planted elaborating-block counts whose mean
// and interval reproduce the published 2.25 +/- 0.55 display.

std::vector<GeneratedFile> gen_tuned_stats(const FixtureSpec& spec) {
    const std::vector<std::int64_t> planted = {6, 3, 3, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2};
    CsvBuilder csv({"session", "record"});
    for (std::size_t s = 0; s < planted.size(); ++s) {
        char sid[8];
        std::snprintf(sid, sizeof sid, "s%02zu", s + 1);
        csv.row({sid, "sort_rows"});
        for (std::int64_t b = 0; b < planted[s]; ++b) {
            csv.row({sid, "inspect_item"});
            csv.row({sid, "query_db"});
            csv.row({sid, "sort_rows"});  // barrier keeps blocks apart
        }
    }
    json mapping{{"name", "tuned_stats-gotzzhou2009-mapping"},
                 {"source_dataset", "tuned_stats"},
                 {"target_taxonomy", "gotzzhou2009"},
                 {"rules",
                  {{"inspect_item", {{"terminal", "inspect"}, {"description", "item examination"}}},
                   {"query_db", {{"terminal", "query"}, {"description", "direct data query"}}},
                   {"sort_rows", {{"terminal", "sort"}, {"description", "list reordering"}}}}},
                 {"explicit_nulls", json::array()}};
    json expected{{"nonterminal", "elaborating"},
                  {"ruleset", "gotzzhou2009-guo2015-mapping"},
                  {"planted_counts", planted},
                  {"note", "counts are guaranteed by construction; statistics come from the "
                           "test-side oracle"}};
    return {{spec.name + "/tuned_stats.csv", csv.body},
            {spec.name + "/tuned_stats-gotzzhou2009-mapping.json", mapping.dump(2) + "\n"},
            {spec.name + "/expected.json", expected.dump(2) + "\n"}};
}

// --------------------------------------------------------------------------
// diversity-share: 10000 events with an exact 9543-event explore share.

std::vector<GeneratedFile> gen_diversity_share(const FixtureSpec& spec) {
    const std::int64_t total = param(spec, "events", 10000);
    const std::int64_t top = param(spec, "top_events", 9543);
    const std::int64_t sessions = param(spec, "sessions", 10);
    if (top > total || sessions < 1) throw ValidationError("invalid diversity-share parameters");

    const std::vector<std::pair<std::string, std::string>> other_records = {
        {"mark_item", "select"},          {"rearrange", "reconfigure"},
        {"change_encoding", "encode"},    {"expand_detail", "abstract-elaborate"},
        {"apply_filter", "filter"},       {"link_views", "connect"},
    };
    CsvBuilder csv({"session", "record"});
    std::int64_t per_session = total / sessions;
    for (std::int64_t i = 0; i < total; ++i) {
        std::string sid = "s" + std::to_string(i / per_session + 1);
        if (i < top) {
            csv.row({sid, "pan_view"});
        } else {
            csv.row({sid, other_records[static_cast<std::size_t>(
                              (i - top) % static_cast<std::int64_t>(other_records.size()))].first});
        }
    }
    json rules = json::object();
    rules["pan_view"] = {{"terminal", "explore"}, {"description", "viewport exploration"}};
    for (const auto& [record, terminal] : other_records) {
        rules[record] = {{"terminal", terminal}, {"description", "fixture translation"}};
    }
    json mapping{{"name", "explore_share-yi2007-mapping"},
                 {"source_dataset", "explore_share"},
                 {"target_taxonomy", "yi2007"},
                 {"rules", rules},
                 {"explicit_nulls", json::array()}};
    json expected{{"top_terminal", "explore"},
                  {"top_events", top},
                  {"total_events", total},
                  {"unused", json::array()}};
    return {{spec.name + "/explore_share.csv", csv.body},
            {spec.name + "/explore_share-yi2007-mapping.json", mapping.dump(2) + "\n"},
            {spec.name + "/expected.json", expected.dump(2) + "\n"}};
}

// --------------------------------------------------------------------------
// diversity-unused: every amar2005 terminal occurs except the two the studied
// logs never produced.

std::vector<GeneratedFile> gen_diversity_unused(const FixtureSpec& spec) {
    const std::vector<std::pair<std::string, std::string>> records = {
        {"lookup_value", "retrieve-value"},
        {"apply_filter", "filter"},
        {"compute_metric", "compute-derived-value"},
        {"sort_column", "sort"},
        {"set_range", "determine-range"},
        {"histogram_view", "characterize-distribution"},
        {"group_items", "cluster"},
        {"compare_columns", "correlate"},
    };
    Rng rng(spec.seed);
    CsvBuilder csv({"session", "record"});
    for (int s = 1; s <= 2; ++s) {
        for (const auto& [record, terminal] : records) {
            (void)terminal;
            csv.row({"s" + std::to_string(s), record});
        }
        for (int e = 0; e < 12; ++e) {
            csv.row({"s" + std::to_string(s),
                     records[static_cast<std::size_t>(rng.next(
                         static_cast<std::int64_t>(records.size())))].first});
        }
    }
    json rules = json::object();
    for (const auto& [record, terminal] : records) {
        rules[record] = {{"terminal", terminal}, {"description", "fixture translation"}};
    }
    json mapping{{"name", "amar_unused-amar2005-mapping"},
                 {"source_dataset", "amar_unused"},
                 {"target_taxonomy", "amar2005"},
                 {"rules", rules},
                 {"explicit_nulls", json::array()}};
    json expected{{"unused", {"find-anomalies", "find-extremum"}}};
    return {{spec.name + "/amar_unused.csv", csv.body},
            {spec.name + "/amar_unused-amar2005-mapping.json", mapping.dump(2) + "\n"},
            {spec.name + "/expected.json", expected.dump(2) + "\n"}};
}

// --------------------------------------------------------------------------
// mining fixtures over the Gotz & Zhou alphabet, records named after
// terminals with an identity code-book.

std::vector<GeneratedFile> gen_mining_numeric(const FixtureSpec& spec) {
    Catalog catalog;
    const Taxonomy& gz = catalog.taxonomy("gotzzhou2009");
    // Distinct fillers per session keep (delete, brush) the only shared bigram.
    const std::vector<std::pair<std::string, std::string>> fillers = {
        {"bookmark", "create"}, {"edit", "merge"}, {"query", "redo"},
        {"restore", "revisit"}, {"sort", "split"},
    };
    CsvBuilder csv({"session", "record"});
    for (std::size_t s = 0; s < fillers.size(); ++s) {
        std::string sid = "s" + std::to_string(s + 1);
        csv.row({sid, fillers[s].first});
        csv.row({sid, "delete"});
        csv.row({sid, "brush"});
        csv.row({sid, fillers[s].second});
    }
    json expected{{"approach", "numeric"},
                  {"unique_pattern", "(delete, brush)"},
                  {"support", static_cast<std::int64_t>(fillers.size())}};
    return {{spec.name + "/numeric_planted.csv", csv.body},
            {spec.name + "/numeric_planted-gotzzhou2009-mapping.json",
             identity_mapping("numeric_planted", gz).dump(2) + "\n"},
            {spec.name + "/expected.json", expected.dump(2) + "\n"}};
}

std::vector<GeneratedFile> gen_mining_plus(const FixtureSpec& spec) {
    Catalog catalog;
    const Taxonomy& gz = catalog.taxonomy("gotzzhou2009");
    const std::vector<std::pair<std::string, std::string>> fillers = {
        {"bookmark", "create"}, {"edit", "merge"}, {"query", "redo"}, {"restore", "revisit"},
    };
    CsvBuilder csv({"session", "record"});
    for (std::size_t s = 0; s < fillers.size(); ++s) {
        std::string sid = "s" + std::to_string(s + 1);
        csv.row({sid, fillers[s].first});
        // Brush-run lengths vary on purpose: the plus encoding still aligns.
        for (std::size_t k = 0; k < 2 + s % 3; ++k) csv.row({sid, "brush"});
        csv.row({sid, "delete"});
        for (std::size_t k = 0; k < 2 + (s * 2) % 3; ++k) csv.row({sid, "brush"});
        csv.row({sid, fillers[s].second});
    }
    json expected{{"approach", "plus"},
                  {"unique_pattern", "(brush+, delete, brush+)"},
                  {"support", static_cast<std::int64_t>(fillers.size())}};
    return {{spec.name + "/plus_planted.csv", csv.body},
            {spec.name + "/plus_planted-gotzzhou2009-mapping.json",
             identity_mapping("plus_planted", gz).dump(2) + "\n"},
            {spec.name + "/expected.json", expected.dump(2) + "\n"}};
}

// --------------------------------------------------------------------------
// ism-planted: every session holds exactly `blocks` mantra occurrences,
// separated by an annotate barrier.

std::vector<GeneratedFile> gen_ism_planted(const FixtureSpec& spec) {
    const std::int64_t sessions = param(spec, "sessions", 6);
    const std::int64_t blocks = param(spec, "blocks", 3);
    Catalog catalog;
    const Taxonomy& bm = catalog.taxonomy("brehmermunzner2013");
    CsvBuilder csv({"session", "record"});
    for (std::int64_t s = 0; s < sessions; ++s) {
        std::string sid = "s" + std::to_string(s + 1);
        for (std::int64_t b = 0; b < blocks; ++b) {
            csv.row({sid, "aggregate"});
            csv.row({sid, "navigate"});
            csv.row({sid, "filter"});
            csv.row({sid, "select"});
            csv.row({sid, "annotate"});  // barrier: not part of any mantra rule
        }
    }
    json expected{{"per_session",
                   {{"overview", blocks}, {"zoom", blocks}, {"filter", blocks},
                    {"details_on_demand", blocks}, {"ism", blocks}}},
                  {"sessions", sessions}};
    return {{spec.name + "/ism_planted.csv", csv.body},
            {spec.name + "/ism_planted-brehmermunzner2013-mapping.json",
             identity_mapping("ism_planted", bm).dump(2) + "\n"},
            {spec.name + "/expected.json", expected.dump(2) + "\n"}};
}

// --------------------------------------------------------------------------
// segmentation-grid: participants x tasks for re-partition tests.

std::vector<GeneratedFile> gen_segmentation_grid(const FixtureSpec& spec) {
    const std::int64_t participants = param(spec, "participants", 3);
    const std::int64_t tasks = param(spec, "tasks", 4);
    const std::int64_t events = param(spec, "events_per_cell", 5);
    Rng rng(spec.seed);
    const char* records[] = {"open_view", "filter_changed", "sort_changed", "detail_shown"};
    CsvBuilder csv({"session", "participant", "task", "record"});
    for (std::int64_t p = 1; p <= participants; ++p) {
        for (std::int64_t t = 1; t <= tasks; ++t) {
            for (std::int64_t e = 0; e < events; ++e) {
                csv.row({"p" + std::to_string(p), "p" + std::to_string(p),
                         "t" + std::to_string(t),
                         records[rng.next(static_cast<std::int64_t>(std::size(records)))]});
            }
        }
    }
    json expected{{"participants", participants}, {"tasks", tasks},
                  {"segmented_sessions", participants * tasks}};
    return {{spec.name + "/grid.csv", csv.body},
            {spec.name + "/expected.json", expected.dump(2) + "\n"}};
}

}  // namespace

std::vector<GeneratedFile> gen_fixture(const FixtureSpec& spec) {
    if (spec.name.empty()) throw ValidationError("fixture spec needs a name");
    std::vector<GeneratedFile> files;
    if (spec.kind == "wall") files = gen_wall(spec);
    else if (spec.kind == "ratio-pair") files = gen_ratio_pair(spec);
    else if (spec.kind == "tuned-stats") files = gen_tuned_stats(spec);
    else if (spec.kind == "diversity-share") files = gen_diversity_share(spec);
    else if (spec.kind == "diversity-unused") files = gen_diversity_unused(spec);
    else if (spec.kind == "mining-numeric") files = gen_mining_numeric(spec);
    else if (spec.kind == "mining-plus") files = gen_mining_plus(spec);
    else if (spec.kind == "ism-planted") files = gen_ism_planted(spec);
    else if (spec.kind == "segmentation-grid") files = gen_segmentation_grid(spec);
    else throw ValidationError("unknown fixture kind '" + spec.kind + "'");
    files.push_back({spec.name + "/" + spec.name + ".spec.json", spec_json(spec)});
    return files;
}

std::vector<FixtureSpec> standard_specs() {
    return {
        {"wall", "wall", 20220901, {{"sessions", 24}, {"min_events", 18}, {"max_events", 36}}},
        {"ratios", "ratio-pair", 20220902, {}},
        {"stats", "tuned-stats", 20220903, {}},
        {"diversity", "diversity-share", 20220904,
         {{"events", 10000}, {"top_events", 9543}, {"sessions", 10}}},
        {"unused", "diversity-unused", 20220905, {}},
        {"mining_numeric", "mining-numeric", 20220906, {}},
        {"mining_plus", "mining-plus", 20220907, {}},
        {"ism", "ism-planted", 20220908, {{"sessions", 6}, {"blocks", 3}}},
        {"segmentation", "segmentation-grid", 20220909,
         {{"participants", 3}, {"tasks", 4}, {"events_per_cell", 5}}},
    };
}

std::size_t write_standard_suite(const std::string& out_dir) {
    std::size_t count = 0;
    for (const auto& spec : standard_specs()) {
        for (const auto& file : gen_fixture(spec)) {
            std::filesystem::path path = std::filesystem::path(out_dir) / file.relative_path;
            std::filesystem::create_directories(path.parent_path());
            write_text_file(path.string(), file.body);
            ++count;
        }
    }
    return count;
}

}  // namespace taxolex::fixtures
