#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "taxolex/transforms.hpp"

#include "oracles.hpp"

using namespace taxolex;

namespace {

TerminalSequence seq_of(std::initializer_list<const char*> names) {
    TerminalSequence s;
    s.session_id = "s";
    std::int64_t i = 0;
    for (const char* n : names) {
        SequenceItem item;
        item.terminal = n;
        item.source_ordinal = i++;
        s.items.push_back(item);
    }
    return s;
}

std::vector<std::string> names_of(const TerminalSequence& s) {
    std::vector<std::string> out;
    for (const auto& item : s.items) out.push_back(item.terminal);
    return out;
}

bool content_equal(const TerminalSequence& a, const TerminalSequence& b) {
    if (a.items.size() != b.items.size()) return false;
    for (std::size_t i = 0; i < a.items.size(); ++i) {
        if (!a.items[i].same_content(b.items[i])) return false;
        if (a.items[i].source_ordinal != b.items[i].source_ordinal) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("the eight-terminal example collapses to five") {
    TerminalSequence s = seq_of({"filter", "filter", "select", "select", "select", "navigate",
                                 "encode", "derive"});
    TerminalSequence c = collapse(s);
    CHECK(names_of(c) ==
          std::vector<std::string>{"filter", "select", "navigate", "encode", "derive"});
    for (const auto& item : c.items) {
        CHECK(item.repeat_count == 1);
        CHECK_FALSE(item.plus);
    }
}

TEST_CASE("collapse of empty and alternating sequences") {
    CHECK(collapse(seq_of({})).items.empty());
    TerminalSequence aba = seq_of({"filter", "select", "filter"});
    CHECK(names_of(collapse(aba)) == std::vector<std::string>{"filter", "select", "filter"});
}

TEST_CASE("plus marks only runs of two or more") {
    TerminalSequence s = seq_of({"filter", "filter", "select", "select", "select"});
    TerminalSequence p = plus_encode(s);
    REQUIRE(p.items.size() == 2);
    CHECK(p.items[0].display() == "filter+");
    CHECK(p.items[1].display() == "select+");

    TerminalSequence single = plus_encode(seq_of({"filter"}));
    CHECK(single.items[0].display() == "filter");
    CHECK_FALSE(single.items[0].plus);

    TerminalSequence mixed = plus_encode(seq_of({"filter", "filter", "select", "filter",
                                                 "filter"}));
    REQUIRE(mixed.items.size() == 3);
    CHECK(mixed.items[0].plus);
    CHECK_FALSE(mixed.items[1].plus);
    CHECK(mixed.items[2].plus);
}

TEST_CASE("numeric keeps exact run lengths and renders them") {
    TerminalSequence s = seq_of({"filter", "filter", "select", "select", "select"});
    TerminalSequence n = numeric_encode(s);
    REQUIRE(n.items.size() == 2);
    CHECK(n.items[0].repeat_count == 2);
    CHECK(n.items[1].repeat_count == 3);
    CHECK(n.items[0].display() == "filter2");
    CHECK(n.items[1].display() == "select3");

    TerminalSequence one = numeric_encode(seq_of({"filter"}));
    CHECK(one.items[0].repeat_count == 1);
    CHECK(one.items[0].display() == "filter");
}

TEST_CASE("expand inverts numeric encoding") {
    TerminalSequence s = seq_of({"filter", "filter", "select", "select", "select"});
    CHECK(content_equal(numeric_expand(numeric_encode(s)), s));
    TerminalSequence one = seq_of({"navigate"});
    CHECK(content_equal(numeric_expand(numeric_encode(one)), one));
}

TEST_CASE("nulls collapse among themselves but never merge with terminals") {
    TerminalSequence s = seq_of({"null", "null", "filter", "filter", "null"});
    TerminalSequence c = collapse(s);
    CHECK(names_of(c) == std::vector<std::string>{"null", "filter", "null"});
}

TEST_CASE("qualifiers split runs") {
    TerminalSequence s;
    s.session_id = "s";
    const char* quals[] = {"same", "same", "different"};
    for (int i = 0; i < 3; ++i) {
        SequenceItem item;
        item.terminal = "inspect";
        item.qualifier = quals[i];
        item.source_ordinal = i;
        s.items.push_back(item);
    }
    TerminalSequence c = collapse(s);
    REQUIRE(c.items.size() == 2);
    CHECK(c.items[0].qualifier == "same");
    CHECK(c.items[1].qualifier == "different");
}

TEST_CASE("transform algebra on random sequences") {
    std::vector<std::string> alphabet = {"filter", "select", "navigate", "null"};
    oracle::Gen gen(99);
    for (int round = 0; round < 2000; ++round) {
        TerminalSequence s;
        s.session_id = "s";
        s.items = oracle::random_sequence(gen, alphabet, 16);
        // Runs are easier to hit with an extra duplication pass.
        if (gen.below(2) == 0 && !s.items.empty()) {
            std::vector<SequenceItem> doubled;
            for (const auto& item : s.items) {
                doubled.push_back(item);
                if (gen.below(3) == 0) doubled.push_back(item);
            }
            for (std::size_t i = 0; i < doubled.size(); ++i) {
                doubled[i].source_ordinal = static_cast<std::int64_t>(i);
            }
            s.items = std::move(doubled);
        }

        TerminalSequence c = collapse(s);
        TerminalSequence p = plus_encode(s);
        TerminalSequence n = numeric_encode(s);

        // Idempotence.
        CHECK(content_equal(collapse(c), c));
        for (std::size_t i = 0; i < p.items.size(); ++i) {
            CHECK(plus_encode(p).items[i].same_content(p.items[i]));
        }
        for (std::size_t i = 0; i < n.items.size(); ++i) {
            CHECK(numeric_encode(n).items[i].same_content(n.items[i]));
        }

        // All three share run structure: same terminal-name projection.
        CHECK(names_of(c) == names_of(p));
        CHECK(names_of(c) == names_of(n));
        CHECK(c.items.size() == n.items.size());

        // Round trip.
        CHECK(content_equal(numeric_expand(n), s));

        // No transform invents or loses terminal names.
        std::set<std::string> raw_names(names_of(s).begin(), names_of(s).end());
        std::set<std::string> collapsed_names(names_of(c).begin(), names_of(c).end());
        CHECK(raw_names == collapsed_names);
    }
}

TEST_CASE("batch transform parallel equals serial") {
    std::vector<std::string> alphabet = {"filter", "select", "navigate", "null"};
    oracle::Gen gen(123);
    SequenceSet seqs;
    seqs.dataset = "d";
    seqs.taxonomy = "t";
    for (int i = 0; i < 64; ++i) {
        TerminalSequence s;
        s.session_id = "s" + std::to_string(i);
        s.items = oracle::random_sequence(gen, alphabet, 64);
        seqs.sequences.push_back(std::move(s));
    }
    for (Approach a : {Approach::Collapse, Approach::Plus, Approach::Numeric}) {
        SequenceSet par = transform_all(seqs, a, Exec::Parallel);
        SequenceSet ser = transform_all(seqs, a, Exec::Serial);
        REQUIRE(par.sequences.size() == ser.sequences.size());
        for (std::size_t i = 0; i < par.sequences.size(); ++i) {
            CHECK(content_equal(par.sequences[i], ser.sequences[i]));
        }
        CHECK(par.applied == a);
    }
    SequenceSet numeric = transform_all(seqs, Approach::Numeric);
    CHECK_THROWS_AS(transform_all(numeric, Approach::Plus), ValidationError);
}
