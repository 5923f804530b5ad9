#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "taxolex/automaton.hpp"
#include "taxolex/catalog.hpp"
#include "taxolex/errors.hpp"

#include "oracles.hpp"

using namespace taxolex;

namespace {

Catalog& catalog() {
    static Catalog c;
    return c;
}

const Taxonomy& bm() { return catalog().taxonomy("brehmermunzner2013"); }

std::vector<Terminal> terms(std::initializer_list<const char*> names) {
    std::vector<Terminal> out;
    for (const char* n : names) out.push_back({n, ""});
    return out;
}

std::vector<SequenceItem> items_of(const std::vector<Terminal>& seq) {
    std::vector<SequenceItem> out;
    for (const auto& t : seq) {
        SequenceItem item;
        item.terminal = t.name;
        item.qualifier = t.qualifier;
        out.push_back(item);
    }
    return out;
}

SymbolAutomaton ism_automaton() {
    RuleSet rs = catalog().ruleset("brehmermunzner2013", "shneiderman1996");
    CompiledRuleSet crs = compile_ruleset(rs, bm());
    for (auto& rule : crs.rules) {
        if (rule.nonterminal == "ism") return rule.automaton;
    }
    throw std::runtime_error("no ism rule");
}

}  // namespace

TEST_CASE("plus closure accepts non-empty navigate runs") {
    SymbolAutomaton a = SymbolAutomaton::compile(parse_pattern("(navigate)+", bm()), bm());
    CHECK(a.full_match(terms({"navigate"})));
    CHECK(a.full_match(terms({"navigate", "navigate"})));
    CHECK_FALSE(a.full_match(terms({})));
    CHECK_FALSE(a.full_match(terms({"navigate", "filter"})));
}

TEST_CASE("normalized star accepts exactly the non-empty strings over its alternation") {
    PatternPtr p = parse_pattern("(aggregate | arrange | encode)*", bm());
    SymbolAutomaton a = SymbolAutomaton::compile(p, bm());
    CHECK(a.normalized_nonempty());

    // Enumerate every string of length <= 3 over the full BM alphabet and
    // compare against the brute-force AST interpreter.
    std::vector<std::string> alphabet;
    for (const auto& s : bm().symbols) alphabet.push_back(s.name);
    std::vector<std::vector<SequenceItem>> stack{{}};
    for (int len = 0; len < 3; ++len) {
        std::vector<std::vector<SequenceItem>> next;
        for (const auto& seq : stack) {
            for (const auto& name : alphabet) {
                auto longer = seq;
                SequenceItem item;
                item.terminal = name;
                longer.push_back(item);
                next.push_back(longer);
            }
        }
        for (const auto& seq : next) {
            CHECK(a.full_match(seq) == oracle::full_match(p, seq));
        }
        stack = std::move(next);
    }
    CHECK_FALSE(a.full_match(std::vector<SequenceItem>{}));
}

TEST_CASE("bounded repetition accepts exactly filter filter") {
    SymbolAutomaton a = SymbolAutomaton::compile(make_repeat(make_symbol("filter"), 2, 2), bm());
    CHECK(a.full_match(terms({"filter", "filter"})));
    CHECK_FALSE(a.full_match(terms({"filter"})));
    CHECK_FALSE(a.full_match(terms({"filter", "filter", "filter"})));
}

TEST_CASE("the mantra automaton accepts the four-step session") {
    SymbolAutomaton ism = ism_automaton();
    CHECK(ism.full_match(terms({"aggregate", "navigate", "filter", "select"})));
    CHECK_FALSE(ism.full_match(terms({"navigate", "filter", "select"})));  // no overview part
    CHECK_FALSE(ism.full_match(terms({"aggregate", "select"})));           // no zoom-or-filter
}

TEST_CASE("non-nullable patterns reject the empty sequence") {
    SymbolAutomaton a = SymbolAutomaton::compile(parse_pattern("(select | derive)+", bm()), bm());
    CHECK_FALSE(a.full_match(terms({})));
}

TEST_CASE("symbols outside the pattern never match") {
    SymbolAutomaton zoom = SymbolAutomaton::compile(parse_pattern("(navigate)+", bm()), bm());
    CHECK_FALSE(zoom.full_match(terms({"filter"})));
}

TEST_CASE("alphabet mismatch is an error, null is not") {
    SymbolAutomaton a = SymbolAutomaton::compile(parse_pattern("(navigate)+", bm()), bm());
    CHECK_THROWS_AS(a.full_match(terms({"teleport"})), ValidationError);
    CHECK_FALSE(a.full_match(terms({"null"})));
}

TEST_CASE("find_matches emits maximal runs") {
    SymbolAutomaton zoom = SymbolAutomaton::compile(parse_pattern("(navigate)+", bm()), bm());
    auto spans = zoom.find_matches(terms({"navigate", "navigate", "filter", "navigate"}));
    REQUIRE(spans.size() == 2);
    CHECK(spans[0] == MatchSpan{0, 2});
    CHECK(spans[1] == MatchSpan{3, 4});
}

TEST_CASE("find_matches with no symbol present") {
    SymbolAutomaton f = SymbolAutomaton::compile(parse_pattern("(filter)+", bm()), bm());
    CHECK(f.find_matches(terms({"select", "select"})).empty());
}

TEST_CASE("normalized overview rule matches the greedy leftmost-longest spans") {
    PatternPtr p = parse_pattern("(aggregate | arrange | encode)*", bm());
    SymbolAutomaton a = SymbolAutomaton::compile(p, bm());
    auto seq = terms({"aggregate", "arrange", "navigate", "encode"});
    auto spans = a.find_matches(seq);
    auto expected = oracle::find_matches(p, items_of(seq));
    REQUIRE(spans.size() == 2);
    CHECK(spans[0] == MatchSpan{0, 2});
    CHECK(spans[1] == MatchSpan{3, 4});
    CHECK(spans == expected);
}

TEST_CASE("nulls break spans") {
    SymbolAutomaton zoom = SymbolAutomaton::compile(parse_pattern("(navigate)+", bm()), bm());
    auto spans = zoom.find_matches(terms({"navigate", "null", "navigate"}));
    REQUIRE(spans.size() == 2);
    CHECK(spans[0] == MatchSpan{0, 1});
    CHECK(spans[1] == MatchSpan{2, 3});
}

TEST_CASE("qualified labels require the qualifier, bare labels accept any") {
    Catalog c;
    const Taxonomy& gz = c.taxonomy("gotzzhou2009");
    SymbolAutomaton scan =
        SymbolAutomaton::compile(parse_pattern("(inspect:same)+", gz), gz);
    SequenceItem same;
    same.terminal = "inspect";
    same.qualifier = "same";
    SequenceItem different = same;
    different.qualifier = "different";
    CHECK(scan.full_match(std::vector<SequenceItem>{same}));
    CHECK_FALSE(scan.full_match(std::vector<SequenceItem>{different}));

    SymbolAutomaton bare = SymbolAutomaton::compile(parse_pattern("(inspect)+", gz), gz);
    CHECK(bare.full_match(std::vector<SequenceItem>{same, different}));
}

TEST_CASE("encoded items match as full runs") {
    SymbolAutomaton zoom = SymbolAutomaton::compile(parse_pattern("(navigate)+", bm()), bm());
    SequenceItem plus_item;
    plus_item.terminal = "navigate";
    plus_item.plus = true;
    CHECK(zoom.full_match(std::vector<SequenceItem>{plus_item}));

    SequenceItem counted;
    counted.terminal = "navigate";
    counted.repeat_count = 7;
    CHECK(zoom.full_match(std::vector<SequenceItem>{counted}));

    SymbolAutomaton two = SymbolAutomaton::compile(make_repeat(make_symbol("filter"), 2, 2), bm());
    SequenceItem f2;
    f2.terminal = "filter";
    f2.repeat_count = 2;
    CHECK(two.full_match(std::vector<SequenceItem>{f2}));
    f2.repeat_count = 3;
    CHECK_FALSE(two.full_match(std::vector<SequenceItem>{f2}));
    SequenceItem fplus;
    fplus.terminal = "filter";
    fplus.plus = true;
    CHECK(two.full_match(std::vector<SequenceItem>{fplus}));  // some run of >= 2 works

    // A plus run is at least two long, so a single mandatory symbol fails.
    SymbolAutomaton one = SymbolAutomaton::compile(make_symbol("filter"), bm());
    CHECK_FALSE(one.full_match(std::vector<SequenceItem>{fplus}));
}

TEST_CASE("randomized equivalence with the brute-force interpreter") {
    std::vector<std::string> alphabet = {"encode", "select", "navigate", "filter"};
    Taxonomy tax;
    tax.name = "mini";
    tax.level = TaxonomyLevel::Terminal;
    for (const auto& n : alphabet) tax.symbols.push_back({n, {}, "", ""});

    oracle::Gen gen(20220711);
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        PatternPtr p = oracle::random_pattern(gen, alphabet);
        if (!can_match_nonempty(*p)) continue;
        SymbolAutomaton a = SymbolAutomaton::compile(p, tax);
        for (int s = 0; s < 5; ++s) {
            std::vector<SequenceItem> seq = oracle::random_sequence(gen, alphabet, 12);
            CAPTURE(pretty_print(p));
            CHECK(a.full_match(seq) == oracle::full_match(p, seq));
            auto spans = a.find_matches(seq);
            auto expected = oracle::find_matches(p, seq);
            CHECK(spans == expected);
            // Span invariants: sorted, disjoint, non-empty, each a full match.
            std::int64_t prev_end = 0;
            for (const auto& span : spans) {
                CHECK(span.start >= prev_end);
                CHECK(span.end > span.start);
                prev_end = span.end;
                std::vector<SequenceItem> slice(
                    seq.begin() + static_cast<std::ptrdiff_t>(span.start),
                    seq.begin() + static_cast<std::ptrdiff_t>(span.end));
                CHECK(a.full_match(slice));
            }
            ++checked;
        }
    }
    CHECK(checked > 1000);
}
