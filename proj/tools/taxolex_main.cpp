// taxolex: reformulated visualization task taxonomies applied to interaction
// logs. Subcommands wire ingestion -> mapping -> transform -> match/metrics/
// mine; every run that writes artifacts also writes a manifest with content
// digests of its inputs.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "taxolex/catalog.hpp"
#include "taxolex/errors.hpp"
#include "taxolex/exec.hpp"
#include "taxolex/fixtures.hpp"
#include "taxolex/ingest.hpp"
#include "taxolex/io.hpp"
#include "taxolex/mapping.hpp"
#include "taxolex/matcher.hpp"
#include "taxolex/metrics.hpp"
#include "taxolex/miner.hpp"
#include "taxolex/reports.hpp"
#include "taxolex/transforms.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace taxolex;

namespace {

struct Global {
    bool quiet = false;
    bool strict = false;
    bool serial = false;
    bool json_stdout = false;
    std::vector<std::string> argv;
};

Exec exec_of(const Global& g) { return g.serial ? Exec::Serial : Exec::Parallel; }

void say(const Global& g, const std::string& line) {
    if (!g.quiet) std::cout << line << "\n";
}

std::string iso_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Collects input digests and output names for the reproducibility manifest.
struct Manifest {
    std::string subcommand;
    const Global* global = nullptr;
    std::map<std::string, std::string> inputs;
    std::vector<std::string> outputs;

    void input_file(const std::string& path) { inputs[path] = file_digest(path); }
    void input_body(const std::string& name, const std::string& body) {
        inputs[name] = content_digest(body);
    }
    json payload() const {
        return json{{"tool", "taxolex"},     {"version", version()},
                    {"subcommand", subcommand}, {"argv", global->argv},
                    {"inputs", inputs},      {"outputs", outputs},
                    {"timestamp", iso_timestamp()}};
    }
};

void write_output(Manifest& manifest, const std::string& path, const std::string& body) {
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    write_text_file(path, body);
    manifest.outputs.push_back(p.filename().string());
}

void write_manifest(const Manifest& manifest, const std::string& path) {
    write_text_file(path, manifest.payload().dump(2) + "\n");
}

// Side-car manifest for single-file outputs.
void finish_single_output(Manifest& manifest, const std::string& out_path) {
    write_manifest(manifest, out_path + ".manifest.json");
}

struct LogOptions {
    std::string path;
    std::string format;
    FormatConfig config;
    std::string time_col;
    std::string attr_col;
};

void add_log_options(CLI::App* cmd, LogOptions& opt) {
    cmd->add_option("--log", opt.path, "interaction log file")->required();
    cmd->add_option("--format", opt.format, "csv|json|ndjson (default: by extension)");
    cmd->add_option("--dataset", opt.config.dataset, "dataset name (default: file stem)");
    cmd->add_option("--session-col", opt.config.session_col, "session id column/field");
    cmd->add_option("--record-col", opt.config.record_col, "record category column/field");
    cmd->add_option("--time-col", opt.time_col, "timestamp column/field");
    cmd->add_option("--attr-col", opt.attr_col, "attribute column/field");
    cmd->add_flag("--lenient", opt.config.lenient, "skip unparseable rows (counted)");
}

LogFormat infer_format(const std::string& flag, const std::string& path) {
    if (!flag.empty()) return log_format_from_string(flag);
    std::string ext = fs::path(path).extension().string();
    if (ext == ".json") return LogFormat::Json;
    if (ext == ".ndjson" || ext == ".jsonl") return LogFormat::Ndjson;
    return LogFormat::Csv;
}

EventLog ingest_from_options(LogOptions& opt, Manifest& manifest, const Global& g) {
    opt.config.format = infer_format(opt.format, opt.path);
    if (!opt.time_col.empty()) opt.config.time_col = opt.time_col;
    if (!opt.attr_col.empty()) opt.config.attr_col = opt.attr_col;
    manifest.input_file(opt.path);
    EventLog log = ingest(opt.path, opt.config);
    for (const auto& w : log.stats.warnings) say(g, "warning: " + w);
    return log;
}

// Rule sets resolve builtin names with or without the -mapping suffix, or a
// file path.
CompiledRuleSet load_compiled_ruleset(Catalog& catalog, const std::string& name_or_path,
                                      Manifest& manifest) {
    std::string name = name_or_path;
    if (!fs::exists(name) && name.find("-mapping") == std::string::npos) name += "-mapping";
    RuleSet rs = catalog.ruleset_by_name(name);
    if (fs::exists(name)) {
        manifest.input_file(name);
    } else {
        manifest.input_body("builtin:" + name, rs.name);
    }
    return compile_ruleset(rs, catalog.taxonomy(rs.terminal_taxonomy));
}

MappingSpec load_mapping_checked(Catalog& catalog, const std::string& path, Manifest& manifest,
                                 const Global& g, std::vector<std::string>* diagnostics) {
    manifest.input_file(path);
    json j = parse_json_file(path);
    std::string tax_name = j.value("target_taxonomy", "");
    if (tax_name.empty()) throw ValidationError(path + ": missing 'target_taxonomy'");
    std::vector<std::string> warnings;
    MappingSpec spec = mapping_from_json(j.dump(), path, catalog.taxonomy(tax_name), &warnings);
    for (const auto& w : warnings) {
        say(g, "warning: " + w);
        if (diagnostics) diagnostics->push_back(w);
    }
    return spec;
}

int finish(const Global& g, const std::vector<std::string>& diagnostics) {
    if (!diagnostics.empty() && g.strict) return 1;
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_catalog(const Global& g, bool rulesets, const std::string& show) {
    Catalog catalog;
    if (!show.empty()) {
        try {
            const Taxonomy& t = catalog.taxonomy(show);
            json symbols = json::array();
            for (const auto& s : t.symbols) {
                json o{{"name", s.name}};
                if (!s.qualifiers.empty()) o["qualifiers"] = s.qualifiers;
                if (!s.provenance.empty()) o["provenance"] = s.provenance;
                symbols.push_back(std::move(o));
            }
            std::cout << json{{"name", t.name},
                              {"level", to_string(t.level)},
                              {"citation", t.citation},
                              {"symbols", symbols}}
                             .dump(2)
                      << "\n";
            return 0;
        } catch (const ValidationError&) {
            // fall through to rule sets
        }
        RuleSet rs = catalog.ruleset_by_name(
            show.find("-mapping") == std::string::npos ? show + "-mapping" : show);
        json rules = json::array();
        for (const auto& r : rs.rules) {
            rules.push_back(json{{"nonterminal", r.nonterminal},
                                 {"pattern", r.pattern_text},
                                 {"normalized_nonempty", r.normalized_nonempty}});
        }
        std::cout << json{{"name", rs.name},
                          {"terminal_taxonomy", rs.terminal_taxonomy},
                          {"nonterminal_taxonomy", rs.nonterminal_taxonomy},
                          {"rules", rules},
                          {"null_nonterminals", rs.null_nonterminals}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    if (rulesets) {
        for (const auto& name : Catalog::builtin_rulesets()) std::cout << name << "\n";
        return 0;
    }
    for (const auto& name : Catalog::builtin_taxonomies()) {
        const Taxonomy& t = catalog.taxonomy(name);
        std::cout << name << " (" << to_string(t.level) << ", " << t.symbols.size()
                  << " symbols)\n";
    }
    return 0;
}

int cmd_validate(const Global& g, const std::string& ruleset, const std::string& taxonomy,
                 const std::string& mapping) {
    Catalog catalog;
    std::vector<std::string> diagnostics;
    if (!taxonomy.empty()) {
        try {
            const Taxonomy& t = catalog.taxonomy(taxonomy);
            say(g, "taxonomy '" + t.name + "': ok (" + std::to_string(t.symbols.size()) +
                       " symbols)");
        } catch (const ValidationError& e) {
            diagnostics.push_back(e.what());
            std::cout << e.what() << "\n";
        }
    }
    if (!ruleset.empty()) {
        std::string name = ruleset;
        if (!fs::exists(name) && name.find("-mapping") == std::string::npos) name += "-mapping";
        RuleSet rs = catalog.ruleset_source(name);
        for (const auto& d : catalog.validate(rs)) {
            diagnostics.push_back(d.display());
            std::cout << rs.name << ": " << d.display() << "\n";
        }
        if (diagnostics.empty()) say(g, "rule set '" + rs.name + "': ok");
    }
    if (!mapping.empty()) {
        Manifest scratch;
        Global quiet_global = g;
        try {
            load_mapping_checked(catalog, mapping, scratch, quiet_global, &diagnostics);
            say(g, "mapping '" + mapping + "': ok");
        } catch (const ValidationError& e) {
            diagnostics.push_back(e.what());
            std::cout << e.what() << "\n";
        }
    }
    if (diagnostics.empty()) say(g, "no diagnostics");
    return finish(g, diagnostics);
}

int cmd_map(const Global& g, LogOptions& log_opt, const std::string& mapping_path,
            const std::string& qualify, const std::string& out) {
    Catalog catalog;
    Manifest manifest{"map", &g, {}, {}};
    std::vector<std::string> diagnostics;
    EventLog log = ingest_from_options(log_opt, manifest, g);
    MappingSpec spec = load_mapping_checked(catalog, mapping_path, manifest, g, &diagnostics);
    ApplyOutcome outcome = apply_mapping(log, spec);
    for (const auto& [record, count] : outcome.unlisted) {
        std::string w = "unlisted record '" + record + "' mapped to null (" +
                        std::to_string(count) + " events)";
        say(g, "warning: " + w);
        diagnostics.push_back(w);
    }
    SequenceSet seqs = outcome.seqs;
    if (!qualify.empty()) {
        std::vector<std::string> warnings;
        seqs = qualify_inspect(seqs, qualify, catalog.taxonomy(spec.target_taxonomy), &warnings);
        for (const auto& w : warnings) {
            say(g, "warning: " + w);
            diagnostics.push_back(w);
        }
    }
    json payload = to_json(seqs);
    write_output(manifest, out, payload.dump(2) + "\n");
    finish_single_output(manifest, out);
    say(g, "mapped " + std::to_string(log.event_count()) + " events in " +
               std::to_string(seqs.sequences.size()) + " sessions -> " + out);
    if (g.json_stdout) std::cout << payload.dump(2) << "\n";
    return finish(g, diagnostics);
}

int cmd_transform(const Global& g, const std::string& in, const std::string& approach,
                  const std::string& out) {
    Manifest manifest{"transform", &g, {}, {}};
    manifest.input_file(in);
    SequenceSet seqs = load_sequence_set(in);
    SequenceSet transformed = transform_all(seqs, approach_from_string(approach), exec_of(g));
    json payload = to_json(transformed);
    write_output(manifest, out, payload.dump(2) + "\n");
    finish_single_output(manifest, out);
    say(g, to_string(transformed.applied) + " encoding -> " + out);
    if (g.json_stdout) std::cout << payload.dump(2) << "\n";
    return 0;
}

int cmd_match(const Global& g, const std::string& seqs_path, const std::string& ruleset,
              const std::string& approach, const std::string& out) {
    Catalog catalog;
    Manifest manifest{"match", &g, {}, {}};
    manifest.input_file(seqs_path);
    SequenceSet seqs = load_sequence_set(seqs_path);
    CompiledRuleSet rules = load_compiled_ruleset(catalog, ruleset, manifest);
    Approach pre = approach_from_string(approach);
    std::vector<SessionMatchReport> reports = match_dataset(seqs, rules, pre, exec_of(g));
    json payload = match_reports_to_json(reports, rules.name, rules.terminal_taxonomy, pre);
    write_output(manifest, out, payload.dump(2) + "\n");
    finish_single_output(manifest, out);
    say(g, "matched " + std::to_string(reports.size()) + " sessions against '" + rules.name +
               "' -> " + out);
    if (g.json_stdout) std::cout << payload.dump(2) << "\n";
    return 0;
}

int cmd_coverage(const Global& g, LogOptions& log_opt, const std::string& mapping_path,
                 const std::string& mode_flag, const std::string& out) {
    Catalog catalog;
    Manifest manifest{"coverage", &g, {}, {}};
    std::vector<std::string> diagnostics;
    EventLog log = ingest_from_options(log_opt, manifest, g);
    MappingSpec spec = load_mapping_checked(catalog, mapping_path, manifest, g, &diagnostics);
    CoverageReport report = coverage(log, spec, coverage_mode_from_string(mode_flag));
    json payload = to_json(report);
    if (!out.empty()) {
        write_output(manifest, out, payload.dump(2) + "\n");
        finish_single_output(manifest, out);
    }
    say(g, report.dataset + " x " + report.taxonomy + ": " + report.rendered() + "% (" +
               std::to_string(report.covered) + "/" + std::to_string(report.total) + ")");
    if (g.json_stdout) std::cout << payload.dump(2) << "\n";
    return finish(g, diagnostics);
}

int cmd_coverage_table(const Global& g, const std::string& config_path,
                       const std::string& mode_flag, const std::string& out,
                       const std::string& csv_out) {
    Catalog catalog;
    Manifest manifest{"coverage", &g, {}, {}};
    manifest.input_file(config_path);
    json cfg = parse_json_file(config_path);
    fs::path base = fs::path(config_path).parent_path();
    auto resolve = [&](const std::string& p) {
        fs::path fp(p);
        return fp.is_absolute() ? fp.string() : (base / fp).string();
    };
    std::vector<EventLog> logs;
    for (const auto& l : cfg.at("logs")) {
        LogOptions opt;
        opt.path = resolve(l.at("path").get<std::string>());
        opt.format = l.value("format", "");
        opt.config.dataset = l.value("dataset", "");
        opt.config.session_col = l.value("session_col", "session");
        opt.config.record_col = l.value("record_col", "record");
        opt.time_col = l.value("time_col", "");
        opt.attr_col = l.value("attr_col", "");
        logs.push_back(ingest_from_options(opt, manifest, g));
    }
    std::vector<std::string> diagnostics;
    std::vector<MappingSpec> specs;
    for (const auto& m : cfg.at("mappings")) {
        specs.push_back(load_mapping_checked(catalog, resolve(m.get<std::string>()), manifest,
                                             g, &diagnostics));
    }
    CoverageMode mode = coverage_mode_from_string(mode_flag);
    CoverageTable table = coverage_table(logs, specs, mode);
    for (const auto& w : table.warnings) {
        say(g, "warning: " + w);
        diagnostics.push_back(w);
    }
    json payload = to_json(table, mode);
    if (!out.empty()) {
        write_output(manifest, out, payload.dump(2) + "\n");
        finish_single_output(manifest, out);
    }
    if (!csv_out.empty()) write_output(manifest, csv_out, coverage_table_csv(table));
    if (!g.quiet) std::cout << coverage_table_csv(table);
    if (g.json_stdout) std::cout << payload.dump(2) << "\n";
    return finish(g, diagnostics);
}

int cmd_diversity(const Global& g, const std::string& seqs_path, const std::string& out,
                  const std::string& csv_out) {
    Catalog catalog;
    Manifest manifest{"diversity", &g, {}, {}};
    manifest.input_file(seqs_path);
    SequenceSet seqs = load_sequence_set(seqs_path);
    DiversityReport report = diversity(seqs, catalog.taxonomy(seqs.taxonomy));
    for (const auto& w : report.warnings) say(g, "warning: " + w);
    json payload = to_json(report);
    if (!out.empty()) {
        write_output(manifest, out, payload.dump(2) + "\n");
        finish_single_output(manifest, out);
    }
    if (!csv_out.empty()) write_output(manifest, csv_out, diversity_csv(report));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", report.top_share);
    say(g, "top terminal '" + report.top_terminal + "' share " + buf + ", " +
               std::to_string(report.unused.size()) + " unused");
    if (g.json_stdout) std::cout << payload.dump(2) << "\n";
    return 0;
}

int cmd_stats(const Global& g, const std::string& seqs_path, const std::string& ruleset,
              const std::string& approach, double ci_multiplier, const std::string& out) {
    Catalog catalog;
    Manifest manifest{"stats", &g, {}, {}};
    manifest.input_file(seqs_path);
    SequenceSet seqs = load_sequence_set(seqs_path);
    CompiledRuleSet rules = load_compiled_ruleset(catalog, ruleset, manifest);
    std::vector<SessionMatchReport> reports =
        match_dataset(seqs, rules, approach_from_string(approach), exec_of(g));
    SessionStatsReport stats = session_stats(reports, ci_multiplier);
    json payload = to_json(stats);
    if (!out.empty()) {
        write_output(manifest, out, payload.dump(2) + "\n");
        finish_single_output(manifest, out);
    }
    for (const auto& s : stats.stats) {
        char line[160];
        if (s.ci95_halfwidth) {
            std::snprintf(line, sizeof line, "%-20s mean %.4f +/- %.4f (n=%lld)",
                          s.nonterminal.c_str(), s.mean, *s.ci95_halfwidth,
                          static_cast<long long>(s.n_sessions));
        } else {
            std::snprintf(line, sizeof line, "%-20s mean %.4f (n=%lld)", s.nonterminal.c_str(),
                          s.mean, static_cast<long long>(s.n_sessions));
        }
        say(g, line);
    }
    for (const auto& nt : stats.inexpressible) say(g, nt + ": inexpressible over this alphabet");
    if (g.json_stdout) std::cout << payload.dump(2) << "\n";
    return 0;
}

int cmd_mine(const Global& g, const std::string& seqs_path, const std::string& approach,
             std::int64_t min_len, double min_support, const std::string& out) {
    Manifest manifest{"mine", &g, {}, {}};
    manifest.input_file(seqs_path);
    SequenceSet seqs = load_sequence_set(seqs_path);
    MiningResult result =
        common_subsequences(seqs, approach_from_string(approach), min_len, min_support,
                            exec_of(g));
    json payload = to_json(result);
    if (!out.empty()) {
        write_output(manifest, out, payload.dump(2) + "\n");
        finish_single_output(manifest, out);
    }
    say(g, std::to_string(result.patterns.size()) + " maximal common pattern(s)");
    for (const auto& p : result.patterns) {
        say(g, "  " + p.rendering + "  support=" + std::to_string(p.support));
    }
    if (g.json_stdout) std::cout << payload.dump(2) << "\n";
    return 0;
}

int cmd_pipeline(const Global& g, const std::string& config_path, const std::string& out_dir) {
    Catalog catalog;
    Manifest manifest{"pipeline", &g, {}, {}};
    std::string stage = "config";
    try {
        manifest.input_file(config_path);
        json cfg = parse_json_file(config_path);
        fs::path base = fs::path(config_path).parent_path();
        auto resolve = [&](const std::string& p) {
            fs::path fp(p);
            return fp.is_absolute() ? fp.string() : (base / fp).string();
        };
        std::string dir = !out_dir.empty() ? out_dir
                                           : resolve(cfg.value("out", "report"));
        fs::create_directories(dir);
        auto out_path = [&](const char* name) { return (fs::path(dir) / name).string(); };

        stage = "ingest";
        const json& lcfg = cfg.at("log");
        LogOptions opt;
        opt.path = resolve(lcfg.at("path").get<std::string>());
        opt.format = lcfg.value("format", "");
        opt.config.dataset = lcfg.value("dataset", "");
        opt.config.session_col = lcfg.value("session_col", "session");
        opt.config.record_col = lcfg.value("record_col", "record");
        opt.time_col = lcfg.value("time_col", "");
        opt.attr_col = lcfg.value("attr_col", "");
        opt.config.lenient = lcfg.value("lenient", false);
        EventLog log = ingest_from_options(opt, manifest, g);

        stage = "mapping";
        MappingSpec spec =
            load_mapping_checked(catalog, resolve(cfg.at("mapping").get<std::string>()),
                                 manifest, g, nullptr);
        ApplyOutcome outcome = apply_mapping(log, spec);
        SequenceSet seqs = outcome.seqs;
        if (cfg.contains("qualify") && cfg.at("qualify").is_string()) {
            stage = "qualify";
            seqs = qualify_inspect(seqs, cfg.at("qualify").get<std::string>(),
                                   catalog.taxonomy(spec.target_taxonomy), nullptr);
        }
        write_output(manifest, out_path("sequences.json"), to_json(seqs).dump(2) + "\n");

        stage = "ruleset";
        CompiledRuleSet rules =
            load_compiled_ruleset(catalog, cfg.at("ruleset").get<std::string>(), manifest);

        stage = "match";
        Approach pre = approach_from_string(cfg.value("approach", "collapse"));
        std::vector<SessionMatchReport> reports = match_dataset(seqs, rules, pre, exec_of(g));
        write_output(manifest, out_path("match_report.json"),
                     match_reports_to_json(reports, rules.name, rules.terminal_taxonomy, pre)
                             .dump(2) +
                         "\n");

        stage = "coverage";
        CoverageReport cov = coverage(log, spec, CoverageMode::DistinctRecords);
        write_output(manifest, out_path("coverage.json"), to_json(cov).dump(2) + "\n");

        stage = "diversity";
        DiversityReport div = diversity(seqs, catalog.taxonomy(seqs.taxonomy));
        write_output(manifest, out_path("diversity.json"), to_json(div).dump(2) + "\n");
        write_output(manifest, out_path("diversity.csv"), diversity_csv(div));

        stage = "stats";
        SessionStatsReport stats =
            session_stats(reports, cfg.value("ci_multiplier", 1.96));
        write_output(manifest, out_path("stats.json"), to_json(stats).dump(2) + "\n");

        stage = "mine";
        json mine_cfg = cfg.value("mine", json::object());
        if (seqs.sequences.size() >= 2 && !mine_cfg.is_null() && mine_cfg.value("enabled", true)) {
            MiningResult mined = common_subsequences(
                seqs, approach_from_string(mine_cfg.value("approach", "plus")),
                mine_cfg.value("min_len", static_cast<std::int64_t>(2)),
                mine_cfg.value("min_support", 1.0), exec_of(g));
            write_output(manifest, out_path("mine.json"), to_json(mined).dump(2) + "\n");
        }

        stage = "manifest";
        write_manifest(manifest, out_path("manifest.json"));
        say(g, "pipeline reports written to " + dir);
        return 0;
    } catch (const Error& e) {
        throw IoError("stage " + stage + ": " + e.what());
    } catch (const json::exception& e) {
        throw IoError("stage " + stage + ": " + e.what());
    }
}

int cmd_genfix(const Global& g, const std::string& out_dir) {
    std::size_t n = taxolex::fixtures::write_standard_suite(out_dir);
    say(g, "wrote " + std::to_string(n) + " fixture files under " + out_dir);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Global g;
    for (int i = 0; i < argc; ++i) g.argv.push_back(argv[i]);

    CLI::App app{"taxolex: visualization task taxonomies as regular grammars over "
                 "interaction logs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version());
    app.add_flag("--quiet", g.quiet, "suppress progress output");
    app.add_flag("--strict", g.strict, "exit 1 when diagnostics were emitted");
    app.add_flag("--serial", g.serial, "disable the OpenMP kernels");
    app.add_flag("--json", g.json_stdout, "echo the JSON payload to stdout");

    // catalog
    auto* c_catalog = app.add_subcommand("catalog", "list or show builtin taxonomies/rule sets");
    bool list_flag = false, rulesets_flag = false;
    std::string show_name;
    c_catalog->add_flag("--list", list_flag, "list builtin taxonomies");
    c_catalog->add_flag("--rulesets", rulesets_flag, "list builtin rule sets");
    c_catalog->add_option("--show", show_name, "dump one taxonomy or rule set as JSON");

    // validate
    auto* c_validate = app.add_subcommand("validate", "validate rule sets, taxonomies, mappings");
    std::string v_ruleset, v_taxonomy, v_mapping;
    c_validate->add_option("--ruleset", v_ruleset, "rule set name or file");
    c_validate->add_option("--taxonomy", v_taxonomy, "taxonomy name or file");
    c_validate->add_option("--mapping", v_mapping, "mapping code-book file");

    // map
    auto* c_map = app.add_subcommand("map", "translate log records to terminal sequences");
    LogOptions map_log;
    std::string map_mapping, map_qualify, map_out = "seqs.json";
    add_log_options(c_map, map_log);
    c_map->add_option("--mapping", map_mapping, "mapping code-book file")->required();
    c_map->add_option("--qualify", map_qualify, "base terminal for same/different qualification");
    c_map->add_option("--out", map_out, "output sequence file");

    // transform
    auto* c_transform = app.add_subcommand("transform", "run-length reduce terminal sequences");
    std::string t_in, t_approach = "collapse", t_out = "seqs_out.json";
    c_transform->add_option("--in", t_in, "input sequence file")->required();
    c_transform->add_option("--approach", t_approach, "collapse|plus|numeric");
    c_transform->add_option("--out", t_out, "output sequence file");

    // match
    auto* c_match = app.add_subcommand("match", "count non-terminal occurrences per session");
    std::string m_seqs, m_ruleset, m_approach = "collapse", m_out = "report.json";
    c_match->add_option("--seqs", m_seqs, "sequence file")->required();
    c_match->add_option("--ruleset", m_ruleset, "rule set name or file")->required();
    c_match->add_option("--approach", m_approach, "pre-transform: collapse|plus|numeric|raw");
    c_match->add_option("--out", m_out, "output report file");

    // coverage
    auto* c_coverage = app.add_subcommand("coverage", "non-null mapping percentage");
    LogOptions cov_log;
    std::string cov_mapping, cov_mode = "distinct", cov_out, cov_table_cfg, cov_csv;
    add_log_options(c_coverage, cov_log);
    c_coverage->get_option("--log")->required(false);
    c_coverage->add_option("--mapping", cov_mapping, "mapping code-book file");
    c_coverage->add_option("--mode", cov_mode, "distinct|events");
    c_coverage->add_option("--out", cov_out, "output JSON file");
    c_coverage->add_option("--table", cov_table_cfg,
                           "config file listing logs+mappings for the full matrix");
    c_coverage->add_option("--csv", cov_csv, "CSV output (table mode)");

    // diversity
    auto* c_diversity = app.add_subcommand("diversity", "terminal distribution");
    std::string d_seqs, d_out, d_csv;
    c_diversity->add_option("--seqs", d_seqs, "sequence file")->required();
    c_diversity->add_option("--out", d_out, "output JSON file");
    c_diversity->add_option("--csv", d_csv, "CSV output, one row per terminal");

    // stats
    auto* c_stats = app.add_subcommand("stats", "per-session non-terminal count statistics");
    std::string s_seqs, s_ruleset, s_approach = "collapse", s_out;
    double s_ci = 1.96;
    c_stats->add_option("--seqs", s_seqs, "sequence file")->required();
    c_stats->add_option("--ruleset", s_ruleset, "rule set name or file")->required();
    c_stats->add_option("--approach", s_approach, "pre-transform");
    c_stats->add_option("--ci-multiplier", s_ci, "interval multiplier (default 1.96)");
    c_stats->add_option("--out", s_out, "output JSON file");

    // mine
    auto* c_mine = app.add_subcommand("mine", "common contiguous sequences across sessions");
    std::string mi_seqs, mi_approach = "plus", mi_out;
    std::int64_t mi_min_len = 2;
    double mi_min_support = 1.0;
    c_mine->add_option("--seqs", mi_seqs, "sequence file")->required();
    c_mine->add_option("--approach", mi_approach, "plus|numeric");
    c_mine->add_option("--min-len", mi_min_len, "minimum pattern length (default 2)");
    c_mine->add_option("--min-support", mi_min_support, "session fraction (default 1.0)");
    c_mine->add_option("--out", mi_out, "output JSON file");

    // pipeline
    auto* c_pipeline = app.add_subcommand("pipeline", "full flow from one config file");
    std::string p_config, p_out;
    c_pipeline->add_option("--config", p_config, "pipeline config JSON")->required();
    c_pipeline->add_option("--out", p_out, "output directory (overrides config)");

    // genfix
    auto* c_genfix = app.add_subcommand("genfix", "regenerate the synthetic fixture suite");
    std::string gf_out = "fixtures";
    c_genfix->add_option("--out", gf_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (c_catalog->parsed()) return cmd_catalog(g, rulesets_flag, show_name);
        if (c_validate->parsed()) return cmd_validate(g, v_ruleset, v_taxonomy, v_mapping);
        if (c_map->parsed()) return cmd_map(g, map_log, map_mapping, map_qualify, map_out);
        if (c_transform->parsed()) return cmd_transform(g, t_in, t_approach, t_out);
        if (c_match->parsed()) return cmd_match(g, m_seqs, m_ruleset, m_approach, m_out);
        if (c_coverage->parsed()) {
            if (!cov_table_cfg.empty()) {
                return cmd_coverage_table(g, cov_table_cfg, cov_mode, cov_out, cov_csv);
            }
            if (cov_log.path.empty() || cov_mapping.empty()) {
                std::cerr << "coverage needs --log and --mapping (or --table CONFIG)\n";
                return 2;
            }
            return cmd_coverage(g, cov_log, cov_mapping, cov_mode, cov_out);
        }
        if (c_diversity->parsed()) return cmd_diversity(g, d_seqs, d_out, d_csv);
        if (c_stats->parsed()) return cmd_stats(g, s_seqs, s_ruleset, s_approach, s_ci, s_out);
        if (c_mine->parsed()) {
            return cmd_mine(g, mi_seqs, mi_approach, mi_min_len, mi_min_support, mi_out);
        }
        if (c_pipeline->parsed()) return cmd_pipeline(g, p_config, p_out);
        if (c_genfix->parsed()) return cmd_genfix(g, gf_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
