#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "taxolex/errors.hpp"
#include "taxolex/miner.hpp"
#include "taxolex/transforms.hpp"

#include "oracles.hpp"

using namespace taxolex;

namespace {

TerminalSequence seq_of(std::initializer_list<const char*> names) {
    TerminalSequence s;
    std::int64_t i = 0;
    for (const char* n : names) {
        SequenceItem item;
        item.terminal = n;
        item.source_ordinal = i++;
        s.items.push_back(item);
    }
    return s;
}

SequenceSet set_of(std::vector<TerminalSequence> sequences) {
    SequenceSet seqs;
    seqs.dataset = "test";
    seqs.taxonomy = "gotzzhou2009";
    seqs.sequences = std::move(sequences);
    for (std::size_t i = 0; i < seqs.sequences.size(); ++i) {
        seqs.sequences[i].session_id = "s" + std::to_string(i + 1);
    }
    return seqs;
}

std::set<std::string> renderings(const MiningResult& r) {
    std::set<std::string> out;
    for (const auto& p : r.patterns) out.insert(p.rendering);
    return out;
}

}  // namespace

TEST_CASE("a shared bigram is recovered under the numeric approach") {
    SequenceSet seqs = set_of({
        seq_of({"bookmark", "delete", "brush", "create"}),
        seq_of({"edit", "delete", "brush", "merge"}),
        seq_of({"query", "delete", "brush", "redo"}),
    });
    MiningResult r = common_subsequences(seqs, Approach::Numeric);
    REQUIRE(r.patterns.size() == 1);
    CHECK(r.patterns[0].rendering == "(delete, brush)");
    CHECK(r.patterns[0].support == 3);
    CHECK(r.patterns[0].length == 2);
}

TEST_CASE("plus-encoded runs align even when raw run lengths differ") {
    SequenceSet seqs = set_of({
        seq_of({"bookmark", "brush", "brush", "delete", "brush", "brush", "brush", "create"}),
        seq_of({"edit", "brush", "brush", "brush", "delete", "brush", "brush", "merge"}),
    });
    MiningResult r = common_subsequences(seqs, Approach::Plus);
    REQUIRE(r.patterns.size() == 1);
    CHECK(r.patterns[0].rendering == "(brush+, delete, brush+)");
    // The same fixture under the numeric approach shares nothing long enough.
    MiningResult n = common_subsequences(seqs, Approach::Numeric);
    CHECK(n.patterns.empty());
}

TEST_CASE("no shared bigram yields an empty result") {
    SequenceSet seqs = set_of({
        seq_of({"bookmark", "create", "edit"}),
        seq_of({"merge", "query", "redo"}),
    });
    CHECK(common_subsequences(seqs, Approach::Plus).patterns.empty());
}

TEST_CASE("identical sessions mine to the whole encoded session") {
    TerminalSequence s = seq_of({"brush", "brush", "delete", "sort", "sort", "sort", "query"});
    SequenceSet seqs = set_of({s, s, s});
    MiningResult r = common_subsequences(seqs, Approach::Plus);
    REQUIRE(r.patterns.size() == 1);
    CHECK(r.patterns[0].rendering == "(brush+, delete, sort+, query)");
    CHECK(r.patterns[0].support == 3);

    MiningResult n = common_subsequences(seqs, Approach::Numeric);
    REQUIRE(n.patterns.size() == 1);
    CHECK(n.patterns[0].rendering == "(brush2, delete, sort3, query)");
}

TEST_CASE("patterns never contain null and never cross it") {
    SequenceSet seqs = set_of({
        seq_of({"delete", "null", "brush", "sort"}),
        seq_of({"delete", "null", "brush", "sort"}),
    });
    MiningResult r = common_subsequences(seqs, Approach::Numeric);
    REQUIRE(r.patterns.size() == 1);
    CHECK(r.patterns[0].rendering == "(brush, sort)");
}

TEST_CASE("preconditions are enforced") {
    SequenceSet seqs = set_of({seq_of({"brush"})});
    CHECK_THROWS_AS(common_subsequences(seqs, Approach::Numeric), ValidationError);
    SequenceSet two = set_of({seq_of({"brush"}), seq_of({"brush"})});
    CHECK_THROWS_AS(common_subsequences(two, Approach::Collapse), ValidationError);
    CHECK_THROWS_AS(common_subsequences(two, Approach::Numeric, 1), ValidationError);
    CHECK_THROWS_AS(common_subsequences(two, Approach::Numeric, 2, 0.0), ValidationError);
    CHECK_THROWS_AS(common_subsequences(two, Approach::Numeric, 2, 1.5), ValidationError);
}

TEST_CASE("min_support below one admits patterns missing from some sessions") {
    SequenceSet seqs = set_of({
        seq_of({"delete", "brush", "bookmark"}),
        seq_of({"delete", "brush", "create"}),
        seq_of({"edit", "merge", "query"}),
    });
    CHECK(common_subsequences(seqs, Approach::Numeric, 2, 1.0).patterns.empty());
    MiningResult r = common_subsequences(seqs, Approach::Numeric, 2, 0.6);
    CHECK(r.threshold_sessions == 2);
    REQUIRE(r.patterns.size() == 1);
    CHECK(r.patterns[0].rendering == "(delete, brush)");
    CHECK(r.patterns[0].support == 2);
}

TEST_CASE("mining agrees with the exhaustive oracle on random inputs") {
    std::vector<std::string> alphabet = {"brush", "delete", "sort", "query", "null"};
    oracle::Gen gen(2022);
    for (int round = 0; round < 60; ++round) {
        std::vector<TerminalSequence> sessions;
        std::int64_t n = 2 + gen.below(4);
        for (std::int64_t i = 0; i < n; ++i) {
            TerminalSequence s;
            s.items = oracle::random_sequence(gen, alphabet, 40);
            sessions.push_back(std::move(s));
        }
        SequenceSet seqs = set_of(std::move(sessions));
        Approach approach = gen.below(2) == 0 ? Approach::Plus : Approach::Numeric;
        double min_support = gen.below(2) == 0 ? 1.0 : 0.51;

        MiningResult mined = common_subsequences(seqs, approach, 2, min_support);

        SequenceSet encoded = transform_all(seqs, approach, Exec::Serial);
        std::vector<std::vector<SequenceItem>> flat;
        for (const auto& s : encoded.sequences) flat.push_back(s.items);
        std::set<std::string> expected =
            oracle::mine(flat, 2, mined.threshold_sessions);

        std::set<std::string> got;
        for (const auto& p : mined.patterns) got.insert(oracle::items_text(p.items));
        CHECK(got == expected);

        // Support and maximality invariants on the production output.
        for (const auto& p : mined.patterns) {
            std::int64_t support = 0;
            for (const auto& s : flat) {
                if (oracle::contains_sub(s, p.items)) ++support;
            }
            CHECK(support == p.support);
            CHECK(support >= mined.threshold_sessions);
            CHECK(p.length >= 2);
        }
    }
}

TEST_CASE("serial and parallel mining agree") {
    std::vector<std::string> alphabet = {"brush", "delete", "sort", "query"};
    oracle::Gen gen(77);
    std::vector<TerminalSequence> sessions;
    for (int i = 0; i < 12; ++i) {
        TerminalSequence s;
        s.items = oracle::random_sequence(gen, alphabet, 80, false);
        sessions.push_back(std::move(s));
    }
    SequenceSet seqs = set_of(std::move(sessions));
    MiningResult par = common_subsequences(seqs, Approach::Plus, 2, 0.5, Exec::Parallel);
    MiningResult ser = common_subsequences(seqs, Approach::Plus, 2, 0.5, Exec::Serial);
    CHECK(renderings(par) == renderings(ser));
    REQUIRE(par.patterns.size() == ser.patterns.size());
    for (std::size_t i = 0; i < par.patterns.size(); ++i) {
        CHECK(par.patterns[i].support == ser.patterns[i].support);
    }
}

TEST_CASE("folding detects repeated leading cores") {
    TerminalSequence s = seq_of({"filter", "explore", "explore", "filter", "explore", "explore",
                                 "filter", "explore"});
    TerminalSequence encoded = plus_encode(s);
    // [filter, explore+, filter, explore+, filter, explore]
    CHECK(fold_pattern(encoded.items) == "((filter, explore+)+, filter, explore)");

    TerminalSequence brush = plus_encode(
        seq_of({"brush", "brush", "delete", "brush", "brush", "delete", "brush", "brush"}));
    CHECK(fold_pattern(brush.items) == "((brush+, delete)+, brush+)");

    TerminalSequence plain = plus_encode(seq_of({"brush", "brush", "delete"}));
    CHECK(fold_pattern(plain.items) == "(brush+, delete)");
}

TEST_CASE("cross-dataset intersection") {
    auto mk = [](std::vector<TerminalSequence> sessions) {
        return common_subsequences(set_of(std::move(sessions)), Approach::Numeric);
    };
    MiningResult a = mk({seq_of({"delete", "brush", "bookmark"}),
                         seq_of({"edit", "delete", "brush"})});
    MiningResult b = mk({seq_of({"create", "delete", "brush"}),
                         seq_of({"merge", "delete", "brush"})});
    MiningResult c = mk({seq_of({"sort", "query", "edit"}), seq_of({"sort", "query", "edit"})});

    // Disjoint sets intersect to nothing.
    CHECK(cross_dataset_intersection({a, c}).empty());

    // Identical sets intersect to themselves.
    auto same = cross_dataset_intersection({b, b});
    REQUIRE(same.size() == 1);
    CHECK(same[0].rendering == "(delete, brush)");

    // Sets sharing exactly one pattern intersect to that pattern.
    auto shared = cross_dataset_intersection({a, b});
    REQUIRE(shared.size() == 1);
    CHECK(shared[0].rendering == "(delete, brush)");
    CHECK(shared[0].support == 2);

    CHECK_THROWS_AS(cross_dataset_intersection({a}), ValidationError);
    MiningResult other = a;
    other.taxonomy = "yi2007";
    CHECK_THROWS_AS(cross_dataset_intersection({a, other}), ValidationError);
}
