#include "taxolex/miner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "taxolex/errors.hpp"
#include "taxolex/transforms.hpp"

namespace taxolex {

namespace {

using Items = std::vector<SequenceItem>;

std::string item_key(const SequenceItem& it) {
    std::string k = it.terminal;
    k += '\x1f';
    k += it.qualifier;
    k += '\x1f';
    k += it.plus ? '+' : '-';
    k += std::to_string(it.repeat_count);
    return k;
}

std::string pattern_key(const Items& items, std::size_t begin, std::size_t end) {
    std::string k;
    for (std::size_t i = begin; i < end; ++i) {
        k += item_key(items[i]);
        k += '\x1e';
    }
    return k;
}

bool contains(const Items& haystack, const Items& needle) {
    return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                       [](const SequenceItem& a, const SequenceItem& b) {
                           return a.same_content(b);
                       }) != haystack.end();
}

struct Candidate {
    std::string key;
    Items items;
    std::int64_t support = 0;
};

}  // namespace

std::string render_pattern(const Items& items) {
    std::string out = "(";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += ", ";
        out += items[i].display();
    }
    out += ")";
    return out;
}

std::string fold_pattern(const Items& items) {
    const std::size_t n = items.size();
    for (std::size_t period = 1; period * 2 <= n; ++period) {
        std::size_t blocks = 1;
        while ((blocks + 1) * period <= n) {
            bool equal = true;
            for (std::size_t i = 0; i < period && equal; ++i) {
                equal = items[i].same_content(items[blocks * period + i]);
            }
            if (!equal) break;
            ++blocks;
        }
        if (blocks < 2) continue;
        std::string out = "(";
        out += render_pattern(Items(items.begin(),
                                    items.begin() + static_cast<std::ptrdiff_t>(period)));
        out += "+";
        for (std::size_t i = blocks * period; i < n; ++i) {
            out += ", ";
            out += items[i].display();
        }
        out += ")";
        return out;
    }
    return render_pattern(items);
}

MiningResult common_subsequences(const SequenceSet& seqs, Approach approach,
                                 std::int64_t min_len, double min_support, Exec exec) {
    if (approach != Approach::Plus && approach != Approach::Numeric) {
        throw ValidationError("mining uses the plus or numeric approach");
    }
    if (seqs.sequences.size() < 2) {
        throw ValidationError("mining needs at least 2 sessions");
    }
    if (min_len < 2) throw ValidationError("min_len must be at least 2");
    if (!(min_support > 0.0 && min_support <= 1.0)) {
        throw ValidationError("min_support must be in (0, 1]");
    }

    SequenceSet encoded = transform_all(seqs, approach, exec);
    const std::size_t n = encoded.sequences.size();
    const std::int64_t threshold = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(
               std::ceil(min_support * static_cast<double>(n) - 1e-9)));

    MiningResult result;
    result.dataset = seqs.dataset;
    result.taxonomy = seqs.taxonomy;
    result.approach = approach;
    result.min_len = min_len;
    result.min_support = min_support;
    result.threshold_sessions = threshold;

    // A pattern in >= threshold sessions occurs in at least one of the
    // n - threshold + 1 shortest sessions; those seed the candidates.
    std::vector<std::size_t> by_length(n);
    for (std::size_t i = 0; i < n; ++i) by_length[i] = i;
    std::stable_sort(by_length.begin(), by_length.end(), [&](std::size_t a, std::size_t b) {
        return encoded.sequences[a].items.size() < encoded.sequences[b].items.size();
    });
    const std::size_t seed_count = n - static_cast<std::size_t>(threshold) + 1;
    std::vector<const Items*> seeds;
    for (std::size_t i = 0; i < seed_count; ++i) {
        seeds.push_back(&encoded.sequences[by_length[i]].items);
    }

    auto count_supports = [&](std::vector<Candidate>& candidates) {
        const std::int64_t m = static_cast<std::int64_t>(candidates.size());
        if (exec == Exec::Parallel) {
            #pragma omp parallel for schedule(dynamic)
            for (std::int64_t i = 0; i < m; ++i) {
                std::int64_t support = 0;
                for (const auto& session : encoded.sequences) {
                    if (contains(session.items, candidates[static_cast<std::size_t>(i)].items)) {
                        ++support;
                    }
                }
                candidates[static_cast<std::size_t>(i)].support = support;
            }
        } else {
            for (std::int64_t i = 0; i < m; ++i) {
                std::int64_t support = 0;
                for (const auto& session : encoded.sequences) {
                    if (contains(session.items, candidates[static_cast<std::size_t>(i)].items)) {
                        ++support;
                    }
                }
                candidates[static_cast<std::size_t>(i)].support = support;
            }
        }
    };

    // Level-wise growth: a supported window of length L+1 needs both its
    // L-prefix and L-suffix supported, which prunes candidate enumeration.
    std::map<std::string, Candidate> supported_prev;
    {
        std::map<std::string, Candidate> singles;
        for (const Items* s : seeds) {
            for (const auto& item : *s) {
                if (item.is_null()) continue;
                std::string key = item_key(item) + '\x1e';
                singles.try_emplace(key, Candidate{key, Items{item}, 0});
            }
        }
        std::vector<Candidate> flat;
        for (auto& [key, c] : singles) flat.push_back(std::move(c));
        count_supports(flat);
        for (auto& c : flat) {
            if (c.support >= threshold) supported_prev.emplace(c.key, std::move(c));
        }
    }

    std::set<std::string> extendable;
    std::vector<std::map<std::string, Candidate>> levels;  // levels[L-1]
    levels.push_back(supported_prev);

    std::size_t length = 1;
    while (!levels.back().empty()) {
        const auto& prev = levels.back();
        ++length;
        std::map<std::string, Candidate> window_set;
        for (const Items* s : seeds) {
            if (s->size() < length) continue;
            for (std::size_t i = 0; i + length <= s->size(); ++i) {
                bool has_null = false;
                for (std::size_t j = i; j < i + length; ++j) {
                    if ((*s)[j].is_null()) {
                        has_null = true;
                        break;
                    }
                }
                if (has_null) continue;
                std::string prefix = pattern_key(*s, i, i + length - 1);
                std::string suffix = pattern_key(*s, i + 1, i + length);
                if (!prev.count(prefix) || !prev.count(suffix)) continue;
                std::string key = pattern_key(*s, i, i + length);
                window_set.try_emplace(
                    key, Candidate{key,
                                   Items(s->begin() + static_cast<std::ptrdiff_t>(i),
                                         s->begin() + static_cast<std::ptrdiff_t>(i + length)),
                                   0});
            }
        }
        std::vector<Candidate> flat;
        for (auto& [key, c] : window_set) flat.push_back(std::move(c));
        count_supports(flat);
        std::map<std::string, Candidate> supported;
        for (auto& c : flat) {
            if (c.support < threshold) continue;
            // A supported extension rules out both of its length-1-shorter cores.
            extendable.insert(pattern_key(c.items, 0, length - 1));
            extendable.insert(pattern_key(c.items, 1, length));
            supported.emplace(c.key, std::move(c));
        }
        levels.push_back(std::move(supported));
    }

    for (std::size_t l = static_cast<std::size_t>(min_len); l <= levels.size(); ++l) {
        for (const auto& [key, c] : levels[l - 1]) {
            if (extendable.count(key)) continue;
            MinedPattern p;
            p.items = c.items;
            p.support = c.support;
            p.length = static_cast<std::int64_t>(c.items.size());
            p.rendering = render_pattern(c.items);
            p.folded_rendering = fold_pattern(c.items);
            result.patterns.push_back(std::move(p));
        }
    }
    std::sort(result.patterns.begin(), result.patterns.end(),
              [](const MinedPattern& a, const MinedPattern& b) {
                  if (a.length != b.length) return a.length < b.length;
                  return a.rendering < b.rendering;
              });
    return result;
}

std::vector<MinedPattern> cross_dataset_intersection(const std::vector<MiningResult>& sets) {
    if (sets.size() < 2) {
        throw ValidationError("cross-dataset intersection needs at least 2 pattern sets");
    }
    for (const auto& s : sets) {
        if (s.taxonomy != sets[0].taxonomy) {
            throw ValidationError("pattern sets mix taxonomies '" + sets[0].taxonomy +
                                  "' and '" + s.taxonomy + "'");
        }
    }
    auto key_of = [](const MinedPattern& p) { return pattern_key(p.items, 0, p.items.size()); };

    std::vector<MinedPattern> out;
    for (const auto& p : sets[0].patterns) {
        std::string key = key_of(p);
        std::int64_t min_support = p.support;
        bool everywhere = true;
        for (std::size_t i = 1; i < sets.size() && everywhere; ++i) {
            bool found = false;
            for (const auto& q : sets[i].patterns) {
                if (key_of(q) == key) {
                    found = true;
                    min_support = std::min(min_support, q.support);
                    break;
                }
            }
            everywhere = found;
        }
        if (everywhere) {
            MinedPattern copy = p;
            copy.support = min_support;
            out.push_back(std::move(copy));
        }
    }
    return out;
}

}  // namespace taxolex
