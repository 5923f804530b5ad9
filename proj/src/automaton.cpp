#include "taxolex/automaton.hpp"

#include <algorithm>
#include <map>

#include "taxolex/errors.hpp"

namespace taxolex {

namespace {

// Expanded-state budget for bounded repetition; keeps a typo like {4,4096}
// from allocating an absurd automaton.
constexpr std::size_t kMaxStates = 200000;

struct Builder {
    std::vector<SymbolAutomaton::State> states;
    std::vector<SymbolAutomaton::Label> labels;
    std::map<std::pair<std::string, std::string>, std::uint32_t> label_index;

    std::uint32_t add_state() {
        if (states.size() >= kMaxStates) {
            throw ValidationError("pattern expands to too many automaton states");
        }
        states.emplace_back();
        return static_cast<std::uint32_t>(states.size() - 1);
    }

    std::uint32_t label_for(const std::string& name, const std::string& qualifier) {
        auto [it, inserted] = label_index.try_emplace({name, qualifier},
                                                      static_cast<std::uint32_t>(labels.size()));
        if (inserted) labels.push_back({name, qualifier});
        return it->second;
    }

    void eps(std::uint32_t from, std::uint32_t to) { states[from].eps.push_back(to); }

    // Builds the fragment for `p` between fresh start/end states; returns them.
    std::pair<std::uint32_t, std::uint32_t> build(const Pattern& p) {
        switch (p.kind) {
            case Pattern::Kind::Symbol: {
                std::uint32_t s = add_state();
                std::uint32_t e = add_state();
                states[s].edges.emplace_back(label_for(p.name, p.qualifier), e);
                return {s, e};
            }
            case Pattern::Kind::Concat: {
                auto [s, e] = build(*p.children[0]);
                for (std::size_t i = 1; i < p.children.size(); ++i) {
                    auto [cs, ce] = build(*p.children[i]);
                    eps(e, cs);
                    e = ce;
                }
                return {s, e};
            }
            case Pattern::Kind::Alt: {
                std::uint32_t s = add_state();
                std::uint32_t e = add_state();
                for (const auto& c : p.children) {
                    auto [cs, ce] = build(*c);
                    eps(s, cs);
                    eps(ce, e);
                }
                return {s, e};
            }
            case Pattern::Kind::Star: {
                std::uint32_t s = add_state();
                std::uint32_t e = add_state();
                auto [cs, ce] = build(*p.children[0]);
                eps(s, cs);
                eps(s, e);
                eps(ce, cs);
                eps(ce, e);
                return {s, e};
            }
            case Pattern::Kind::Plus: {
                auto [cs, ce] = build(*p.children[0]);
                std::uint32_t e = add_state();
                eps(ce, e);
                eps(ce, cs);
                return {cs, e};
            }
            case Pattern::Kind::Optional: {
                std::uint32_t s = add_state();
                std::uint32_t e = add_state();
                auto [cs, ce] = build(*p.children[0]);
                eps(s, cs);
                eps(s, e);
                eps(ce, e);
                return {s, e};
            }
            case Pattern::Kind::Repeat: {
                // min mandatory copies, then (max - min) optional ones.
                std::uint32_t s = add_state();
                std::uint32_t e = add_state();
                if (p.max == 0) {
                    eps(s, e);
                    return {s, e};
                }
                std::uint32_t cur = s;
                for (std::uint32_t i = 0; i < p.max; ++i) {
                    auto [cs, ce] = build(*p.children[0]);
                    eps(cur, cs);
                    if (i + 1 > p.min) eps(cur, e);  // copies beyond min are skippable
                    cur = ce;
                }
                eps(cur, e);
                if (p.min == 0) eps(s, e);
                return {s, e};
            }
        }
        throw ValidationError("unreachable pattern kind");
    }
};

}  // namespace

SymbolAutomaton SymbolAutomaton::compile(const PatternPtr& pattern, const Taxonomy& alphabet) {
    if (alphabet.level != TaxonomyLevel::Terminal) {
        throw ValidationError("patterns compile against a terminal-level taxonomy");
    }
    if (!can_match_nonempty(*pattern)) {
        throw ValidationError("pattern can only match the empty sequence");
    }

    SymbolAutomaton a;
    a.normalized_nonempty_ = nullable(*pattern);
    PatternPtr effective = a.normalized_nonempty_ ? nonempty(pattern) : pattern;

    Builder b;
    auto [s, e] = b.build(*effective);
    a.states_ = std::move(b.states);
    a.labels_ = std::move(b.labels);
    a.start_ = s;
    a.accept_ = e;
    a.alphabet_name_ = alphabet.name;
    for (const auto& sym : alphabet.symbols) a.alphabet_names_.insert(sym.name);

    for (const auto& label : a.labels_) {
        if (!alphabet.allows(label.name, label.qualifier)) {
            throw ValidationError("pattern symbol '" + label.name +
                                  "' does not belong to taxonomy '" + alphabet.name + "'");
        }
    }
    return a;
}

SymbolAutomaton::StateSet SymbolAutomaton::make_set() const {
    return StateSet((states_.size() + 63) / 64, 0);
}

void SymbolAutomaton::closure(StateSet& set) const {
    std::vector<std::uint32_t> stack;
    for (std::size_t w = 0; w < set.size(); ++w) {
        std::uint64_t bits = set[w];
        while (bits) {
            int bit = __builtin_ctzll(bits);
            bits &= bits - 1;
            stack.push_back(static_cast<std::uint32_t>(w * 64 + bit));
        }
    }
    while (!stack.empty()) {
        std::uint32_t q = stack.back();
        stack.pop_back();
        for (std::uint32_t t : states_[q].eps) {
            std::uint64_t& word = set[t / 64];
            std::uint64_t mask = 1ull << (t % 64);
            if (!(word & mask)) {
                word |= mask;
                stack.push_back(t);
            }
        }
    }
}

SymbolAutomaton::StateSet SymbolAutomaton::start_set() const {
    StateSet set = make_set();
    set[start_ / 64] |= 1ull << (start_ % 64);
    closure(set);
    return set;
}

SymbolAutomaton::StateSet SymbolAutomaton::step(const StateSet& from, const SequenceItem& item) const {
    StateSet next = make_set();
    if (item.is_null()) return next;  // null is a hard barrier
    for (std::size_t w = 0; w < from.size(); ++w) {
        std::uint64_t bits = from[w];
        while (bits) {
            int bit = __builtin_ctzll(bits);
            bits &= bits - 1;
            const State& st = states_[w * 64 + static_cast<std::size_t>(bit)];
            for (auto [label, target] : st.edges) {
                const Label& l = labels_[label];
                if (l.name == item.terminal &&
                    (l.qualifier.empty() || l.qualifier == item.qualifier)) {
                    next[target / 64] |= 1ull << (target % 64);
                }
            }
        }
    }
    closure(next);
    return next;
}

SymbolAutomaton::StateSet SymbolAutomaton::step_encoded(const StateSet& from,
                                                        const SequenceItem& item) const {
    if (!item.plus && item.repeat_count == 1) return step(from, item);

    // The item stands for a run of identical terminals: consume it
    // repeat_count times, or for a plus item any count >= 2. State-set
    // trajectories under a fixed symbol are eventually periodic, which bounds
    // both loops.
    if (item.plus) {
        StateSet cur = step(from, item);
        cur = step(cur, item);
        StateSet acc = cur;
        std::vector<StateSet> seen{cur};
        for (;;) {
            cur = step(cur, item);
            if (std::find(seen.begin(), seen.end(), cur) != seen.end()) break;
            seen.push_back(cur);
            for (std::size_t w = 0; w < acc.size(); ++w) acc[w] |= cur[w];
        }
        return acc;
    }

    StateSet cur = from;
    std::vector<StateSet> seen;
    for (std::int64_t i = 0; i < item.repeat_count; ++i) {
        auto it = std::find(seen.begin(), seen.end(), cur);
        if (it != seen.end()) {
            // Trajectory cycles from `it`; jump the remaining consumptions.
            std::size_t entry = static_cast<std::size_t>(it - seen.begin());
            std::size_t period = seen.size() - entry;
            std::size_t remaining = static_cast<std::size_t>(item.repeat_count - i);
            return seen[entry + remaining % period];
        }
        seen.push_back(cur);
        cur = step(cur, item);
    }
    return cur;
}

bool SymbolAutomaton::accepts(const StateSet& set) const {
    return (set[accept_ / 64] >> (accept_ % 64)) & 1ull;
}

bool SymbolAutomaton::empty_set(const StateSet& set) const {
    for (std::uint64_t w : set) {
        if (w) return false;
    }
    return true;
}

void SymbolAutomaton::check_alphabet(const std::vector<SequenceItem>& items) const {
    for (const auto& it : items) {
        if (!it.is_null() && !alphabet_names_.count(it.terminal)) {
            throw ValidationError("sequence symbol '" + it.terminal +
                                  "' is not in alphabet '" + alphabet_name_ + "'");
        }
    }
}

bool SymbolAutomaton::full_match(const std::vector<SequenceItem>& items) const {
    check_alphabet(items);
    StateSet cur = start_set();
    for (const auto& item : items) {
        cur = step_encoded(cur, item);
        if (empty_set(cur)) return false;
    }
    return !items.empty() && accepts(cur);
}

bool SymbolAutomaton::full_match(const std::vector<Terminal>& seq) const {
    std::vector<SequenceItem> items;
    items.reserve(seq.size());
    for (const auto& t : seq) {
        SequenceItem item;
        item.terminal = t.name;
        item.qualifier = t.qualifier;
        items.push_back(std::move(item));
    }
    return full_match(items);
}

std::vector<MatchSpan> SymbolAutomaton::find_matches(const std::vector<SequenceItem>& items) const {
    check_alphabet(items);
    std::vector<MatchSpan> spans;
    const std::int64_t n = static_cast<std::int64_t>(items.size());
    const StateSet start = start_set();
    std::int64_t i = 0;
    while (i < n) {
        StateSet cur = step_encoded(start, items[static_cast<std::size_t>(i)]);
        if (empty_set(cur)) {
            ++i;
            continue;
        }
        std::int64_t best = accepts(cur) ? i + 1 : -1;
        for (std::int64_t j = i + 1; j < n; ++j) {
            cur = step_encoded(cur, items[static_cast<std::size_t>(j)]);
            if (empty_set(cur)) break;
            if (accepts(cur)) best = j + 1;
        }
        if (best >= 0) {
            spans.push_back({i, best});
            i = best;
        } else {
            ++i;
        }
    }
    return spans;
}

std::vector<MatchSpan> SymbolAutomaton::find_matches(const std::vector<Terminal>& seq) const {
    std::vector<SequenceItem> items;
    items.reserve(seq.size());
    for (const auto& t : seq) {
        SequenceItem item;
        item.terminal = t.name;
        item.qualifier = t.qualifier;
        items.push_back(std::move(item));
    }
    return find_matches(items);
}

}  // namespace taxolex
