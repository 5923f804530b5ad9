#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "taxolex/catalog.hpp"
#include "taxolex/errors.hpp"

using namespace taxolex;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("builtin listing carries the seven taxonomies") {
    auto names = Catalog::builtin_taxonomies();
    CHECK(names.size() == 7);
    CHECK(contains(names, "brehmermunzner2013"));
    CHECK(contains(names, "shneiderman1996"));
    CHECK(contains(names, "amar2005"));
    CHECK(contains(names, "gotzzhou2009"));
    CHECK(contains(names, "yi2007"));
    CHECK(contains(names, "gotzwen2009"));
    CHECK(contains(names, "guo2015"));

    Catalog catalog;
    int t = 0, nt = 0;
    for (const auto& n : names) {
        (catalog.taxonomy(n).level == TaxonomyLevel::Terminal ? t : nt) += 1;
    }
    CHECK(t == 4);
    CHECK(nt == 3);
}

TEST_CASE("twelve builtin rule sets, one per pairing") {
    auto names = Catalog::builtin_rulesets();
    CHECK(names.size() == 12);
    CHECK(contains(names, "brehmermunzner2013-shneiderman1996-mapping"));
    CHECK(contains(names, "amar2005-gotzwen2009-mapping"));
}

TEST_CASE("brehmermunzner2013 has exactly the eleven method terminals") {
    Catalog catalog;
    const Taxonomy& t = catalog.taxonomy("brehmermunzner2013");
    std::set<std::string> expected = {"encode", "select",   "navigate", "arrange",
                                      "change", "filter",   "aggregate", "annotate",
                                      "import", "derive",   "record"};
    std::set<std::string> actual;
    for (const auto& s : t.symbols) actual.insert(s.name);
    CHECK(actual == expected);
}

TEST_CASE("yi2007 has exactly the seven categories") {
    Catalog catalog;
    const Taxonomy& t = catalog.taxonomy("yi2007");
    std::set<std::string> expected = {"select", "explore", "reconfigure",        "encode",
                                      "abstract-elaborate", "filter", "connect"};
    std::set<std::string> actual;
    for (const auto& s : t.symbols) actual.insert(s.name);
    CHECK(actual == expected);
}

TEST_CASE("shneiderman1996 holds the mantra non-terminals plus the composite") {
    Catalog catalog;
    const Taxonomy& t = catalog.taxonomy("shneiderman1996");
    CHECK(t.level == TaxonomyLevel::NonTerminal);
    std::set<std::string> expected = {"overview", "zoom", "filter", "details_on_demand", "ism"};
    std::set<std::string> actual;
    for (const auto& s : t.symbols) actual.insert(s.name);
    CHECK(actual == expected);
}

TEST_CASE("unknown taxonomy names fail") {
    Catalog catalog;
    CHECK_THROWS_AS(catalog.taxonomy("doesnotexist2020"), ValidationError);
}

TEST_CASE("the displayed mantra rules load verbatim") {
    Catalog catalog;
    RuleSet rs = catalog.ruleset("brehmermunzner2013", "shneiderman1996");
    CHECK(rs.rules.size() == 5);
    CHECK(rs.null_nonterminals.empty());

    const ProductionRule* overview = rs.find_rule("overview");
    REQUIRE(overview != nullptr);
    CHECK(overview->pattern_text == "(aggregate | arrange | encode)*");
    CHECK(overview->normalized_nonempty);

    const ProductionRule* zoom = rs.find_rule("zoom");
    REQUIRE(zoom != nullptr);
    CHECK(zoom->pattern_text == "(navigate)+");
    CHECK_FALSE(zoom->normalized_nonempty);

    CHECK(rs.find_rule("filter")->pattern_text == "(filter)+");
    CHECK(rs.find_rule("details_on_demand")->pattern_text == "(select | derive)+");
    REQUIRE(rs.find_rule("ism") != nullptr);

    // parse -> print is a fixed point on every stored pattern string.
    const Taxonomy& bm = catalog.taxonomy("brehmermunzner2013");
    for (const auto& rule : rs.rules) {
        CHECK(pretty_print(rule.source_ast) == rule.pattern_text);
        (void)bm;
    }
}

TEST_CASE("gotzwen rule sets use qualified inspect-like terminals") {
    Catalog catalog;
    RuleSet gz = catalog.ruleset("gotzzhou2009", "gotzwen2009");
    CHECK(gz.find_rule("scan")->pattern_text == "(inspect:same)+");
    CHECK(gz.find_rule("drill-down")->pattern_text == "(inspect:different)+");

    RuleSet amar = catalog.ruleset("amar2005", "gotzwen2009");
    CHECK(contains(amar.null_nonterminals, "scan"));
    CHECK(contains(amar.null_nonterminals, "drill-down"));
    CHECK(amar.find_rule("scan") == nullptr);
}

TEST_CASE("amar over shneiderman houses every non-terminal") {
    Catalog catalog;
    RuleSet rs = catalog.ruleset("amar2005", "shneiderman1996");
    const Taxonomy& nt = catalog.taxonomy("shneiderman1996");
    for (const auto& sym : nt.symbols) {
        bool in_rules = rs.find_rule(sym.name) != nullptr;
        bool in_nulls = contains(rs.null_nonterminals, sym.name);
        CHECK(in_rules != in_nulls);
        CHECK((in_rules || in_nulls));
    }
    CHECK(rs.null_nonterminals.empty());
}

TEST_CASE("every builtin rule set validates cleanly and partitions its non-terminals") {
    Catalog catalog;
    for (const auto& name : Catalog::builtin_rulesets()) {
        RuleSet rs = catalog.ruleset_source(name);
        auto diags = catalog.validate(rs);
        CAPTURE(name);
        for (const auto& d : diags) CAPTURE(d.display());
        CHECK(diags.empty());

        const Taxonomy& nt = catalog.taxonomy(rs.nonterminal_taxonomy);
        std::set<std::string> housed;
        for (const auto& r : rs.rules) CHECK(housed.insert(r.nonterminal).second);
        for (const auto& n : rs.null_nonterminals) CHECK(housed.insert(n).second);
        std::set<std::string> expected;
        for (const auto& s : nt.symbols) expected.insert(s.name);
        CHECK(housed == expected);
    }
}

TEST_CASE("validate flags unknown symbols with the rule and symbol names") {
    Catalog catalog;
    RuleSet rs;
    rs.name = "bad-set-mapping";
    rs.terminal_taxonomy = "brehmermunzner2013";
    rs.nonterminal_taxonomy = "shneiderman1996";
    rs.rules.push_back({"overview", "(aggregate)+", "", "", nullptr, nullptr, false});
    rs.rules.push_back({"zoom", "(zoom)+", "", "", nullptr, nullptr, false});
    rs.rules.push_back({"filter", "(filter)+", "", "", nullptr, nullptr, false});
    rs.rules.push_back({"details_on_demand", "(select)+", "", "", nullptr, nullptr, false});
    rs.rules.push_back({"ism", "overview filter details_on_demand", "", "", nullptr, nullptr,
                        false});
    auto diags = catalog.validate(rs);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].rule == "zoom");
    CHECK(std::string(diags[0].message).find("zoom") != std::string::npos);
}

TEST_CASE("validate flags non-terminals housed nowhere") {
    Catalog catalog;
    RuleSet rs;
    rs.name = "incomplete-set-mapping";
    rs.terminal_taxonomy = "brehmermunzner2013";
    rs.nonterminal_taxonomy = "shneiderman1996";
    rs.rules.push_back({"overview", "(aggregate)+", "", "", nullptr, nullptr, false});
    auto diags = catalog.validate(rs);
    CHECK(diags.size() == 4);  // zoom, filter, details_on_demand, ism all missing
}

TEST_CASE("non-terminal references must point upward") {
    Catalog catalog;
    RuleSet rs;
    rs.name = "forward-ref-mapping";
    rs.terminal_taxonomy = "brehmermunzner2013";
    rs.nonterminal_taxonomy = "shneiderman1996";
    rs.rules.push_back({"ism", "overview (zoom | filter)+ details_on_demand", "", "",
                        nullptr, nullptr, false});
    rs.rules.push_back({"overview", "(aggregate)+", "", "", nullptr, nullptr, false});
    rs.rules.push_back({"zoom", "(navigate)+", "", "", nullptr, nullptr, false});
    rs.rules.push_back({"filter", "(filter)+", "", "", nullptr, nullptr, false});
    rs.rules.push_back({"details_on_demand", "(select)+", "", "", nullptr, nullptr, false});
    auto diags = catalog.validate(rs);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].rule == "ism");  // overview/zoom/details unknown at that point
}

TEST_CASE("user taxonomy and rule set files load from paths") {
    Catalog catalog;
    Taxonomy t = taxonomy_from_json(R"({
        "name": "toy2024",
        "level": "T",
        "symbols": [{"name": "look"}, {"name": "point"}]
    })", "inline");
    CHECK(t.symbols.size() == 2);
    catalog.register_taxonomy(t);
    CHECK(catalog.taxonomy("toy2024").name == "toy2024");

    CHECK_THROWS_AS(taxonomy_from_json(R"({
        "name": "dup",
        "level": "T",
        "symbols": [{"name": "look"}, {"name": "look"}]
    })", "inline"), ValidationError);

    CHECK_THROWS_AS(taxonomy_from_json(R"({
        "name": "reserved",
        "level": "T",
        "symbols": [{"name": "null"}]
    })", "inline"), ValidationError);
}
