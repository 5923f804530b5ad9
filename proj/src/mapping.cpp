#include "taxolex/mapping.hpp"

#include <nlohmann/json.hpp>

#include "taxolex/errors.hpp"
#include "taxolex/io.hpp"

namespace taxolex {

std::string MappingSpec::terminal_for(const std::string& record) const {
    auto it = rules.find(record);
    if (it != rules.end()) return it->second.terminal;
    return kNullTerminal;
}

MappingSpec mapping_from_json(const std::string& text, const std::string& origin,
                              const Taxonomy& taxonomy, std::vector<std::string>* warnings) {
    nlohmann::json j = parse_json(text, origin);  // rejects duplicate record keys
    if (!j.is_object()) throw ValidationError(origin + ": mapping file must hold an object");

    MappingSpec spec;
    auto str = [&](const char* key, bool required) -> std::string {
        auto it = j.find(key);
        if (it == j.end()) {
            if (required) throw ValidationError(origin + ": missing field '" + key + "'");
            return "";
        }
        return it->get<std::string>();
    };
    spec.name = str("name", true);
    spec.source_dataset = str("source_dataset", true);
    spec.target_taxonomy = str("target_taxonomy", true);
    if (spec.target_taxonomy != taxonomy.name) {
        throw ValidationError(origin + ": target_taxonomy '" + spec.target_taxonomy +
                              "' does not match loaded taxonomy '" + taxonomy.name + "'");
    }
    if (taxonomy.level != TaxonomyLevel::Terminal) {
        throw ValidationError(origin + ": mappings target terminal-level taxonomies");
    }

    if (auto rules = j.find("rules"); rules != j.end()) {
        if (!rules->is_object()) throw ValidationError(origin + ": 'rules' must be an object");
        for (auto it = rules->begin(); it != rules->end(); ++it) {
            MappingRule rule;
            if (it->is_string()) {
                rule.terminal = it->get<std::string>();
            } else if (it->is_object()) {
                auto t = it->find("terminal");
                if (t == it->end()) {
                    throw ValidationError(origin + ": rule '" + it.key() +
                                          "' is missing 'terminal'");
                }
                rule.terminal = t->get<std::string>();
                if (auto d = it->find("description"); d != it->end()) {
                    rule.description = d->get<std::string>();
                }
            } else {
                throw ValidationError(origin + ": rule '" + it.key() + "' must be an object");
            }
            if (rule.terminal != kNullTerminal && !taxonomy.has_symbol(rule.terminal)) {
                throw ValidationError(origin + ": rule '" + it.key() + "' maps to unknown terminal '" +
                                      rule.terminal + "' of taxonomy '" + taxonomy.name + "'");
            }
            if (rule.description.empty() && warnings) {
                warnings->push_back(origin + ": rule '" + it.key() + "' has no description");
            }
            spec.rules.emplace(it.key(), std::move(rule));
        }
    }
    if (auto nulls = j.find("explicit_nulls"); nulls != j.end()) {
        for (const auto& n : *nulls) {
            std::string record = n.get<std::string>();
            if (spec.rules.count(record)) {
                throw ValidationError(origin + ": record '" + record +
                                      "' appears in both rules and explicit_nulls");
            }
            spec.explicit_nulls.insert(std::move(record));
        }
    }
    if (spec.rules.empty() && warnings) {
        warnings->push_back(origin + ": mapping has no rules; every record will map to null");
    }
    return spec;
}

MappingSpec load_mapping(const std::string& path, const Taxonomy& taxonomy,
                         std::vector<std::string>* warnings) {
    return mapping_from_json(read_text_file(path), path, taxonomy, warnings);
}

ApplyOutcome apply_mapping(const EventLog& log, const MappingSpec& spec) {
    ApplyOutcome out;
    out.seqs.dataset = log.dataset;
    out.seqs.taxonomy = spec.target_taxonomy;
    out.seqs.applied = Approach::Raw;
    out.seqs.sequences.reserve(log.sessions.size());
    for (const auto& session : log.sessions) {
        TerminalSequence seq;
        seq.session_id = session.session_id;
        seq.items.reserve(session.events.size());
        for (const auto& event : session.events) {
            SequenceItem item;
            item.terminal = spec.terminal_for(event.record);
            item.source_ordinal = event.ordinal;
            if (event.attribute) item.attribute = *event.attribute;
            if (item.terminal == kNullTerminal && !spec.rules.count(event.record) &&
                !spec.explicit_nulls.count(event.record)) {
                out.unlisted[event.record] += 1;
            }
            seq.items.push_back(std::move(item));
        }
        out.seqs.sequences.push_back(std::move(seq));
    }
    return out;
}

SequenceSet qualify_inspect(const SequenceSet& seqs, const std::string& base,
                            const Taxonomy& taxonomy, std::vector<std::string>* warnings) {
    if (!taxonomy.has_symbol(base)) {
        throw ValidationError("unknown base terminal '" + base + "' in taxonomy '" +
                              taxonomy.name + "'");
    }
    bool any_attribute = false;
    for (const auto& s : seqs.sequences) {
        for (const auto& item : s.items) {
            if (item.terminal == base && !item.attribute.empty()) {
                any_attribute = true;
                break;
            }
        }
        if (any_attribute) break;
    }
    if (!any_attribute) {
        if (warnings) {
            warnings->push_back("no '" + base +
                                "' item carries an attribute; qualification skipped");
        }
        return seqs;
    }

    SequenceSet out = seqs;
    for (auto& s : out.sequences) {
        bool seen_before = false;
        std::string previous_attr;
        for (auto& item : s.items) {
            if (item.terminal != base) continue;
            bool same = seen_before && !item.attribute.empty() && item.attribute == previous_attr;
            item.qualifier = same ? "same" : "different";
            seen_before = true;
            previous_attr = item.attribute;
        }
    }
    return out;
}

}  // namespace taxolex
