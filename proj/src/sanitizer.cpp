#include "textsan/sanitizer.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "textsan/errors.hpp"
#include "textsan/text.hpp"

namespace textsan {

namespace {

PhraseQuery make_query(const std::vector<std::string>& phrases) {
    PhraseQuery q;
    for (const auto& p : phrases) q.add(p);
    return q;
}

bool safe_for_all(const std::vector<std::string>& phrases, const ProtectionPolicy& policy,
                  CountProvider& provider) {
    for (const auto& entry : policy.entries) {
        if (is_risky(phrases, entry, policy.contextualize, provider).risky) return false;
    }
    return true;
}

std::vector<std::string> chain_of(const std::string& phrase, const Taxonomy& tax) {
    if (auto concept_name = tax.resolve(phrase)) return tax.chain(*concept_name);
    return {};
}

}  // namespace

ProtectionPolicy ProtectionPolicy::load(const std::filesystem::path& path, bool contextualize) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open policy file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string(), contextualize);
}

ProtectionPolicy ProtectionPolicy::parse(std::string_view content, std::string_view origin,
                                         bool contextualize) {
    ProtectionPolicy policy;
    policy.contextualize = contextualize;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        const std::size_t eol = content.find('\n', pos);
        const std::string_view line = content.substr(
            pos, eol == std::string_view::npos ? content.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? content.size() + 1 : eol + 1;
        ++line_no;
        if (is_blank(line) || line.front() == '#') continue;

        const std::size_t tab = line.find('\t');
        PolicyEntry entry;
        if (tab == std::string_view::npos) {
            entry.entity = normalize(line);
        } else {
            entry.entity = normalize(line.substr(0, tab));
            std::string gen = normalize(line.substr(tab + 1));
            if (gen.empty()) {
                throw ParseError(std::string(origin) + ":" + std::to_string(line_no) +
                                 ": empty generalization");
            }
            entry.generalization = std::move(gen);
        }
        if (entry.entity.empty()) {
            throw ParseError(std::string(origin) + ":" + std::to_string(line_no) +
                             ": empty entity");
        }
        policy.entries.push_back(std::move(entry));
    }
    policy.validate();
    return policy;
}

void ProtectionPolicy::validate(const Taxonomy* tax) const {
    if (entries.empty()) throw ConfigError("protection policy has no entries");
    std::set<std::string> seen;
    for (const auto& entry : entries) {
        if (!seen.insert(entry.entity).second) {
            throw ConfigError("duplicate policy entity: '" + entry.entity + "'");
        }
        if (contextualize && !entry.generalization) {
            throw ConfigError("contextualized probabilities require a generalization for every "
                              "entry; '" + entry.entity + "' has none");
        }
        if (tax != nullptr && entry.generalization) {
            const auto c = tax->resolve(entry.entity);
            const auto g = tax->resolve(*entry.generalization);
            if (c && g && !tax->is_hypernym(*g, *c)) {
                throw ConfigError("'" + *entry.generalization + "' is not a hypernym of '" +
                                  entry.entity + "'");
            }
        }
    }
}

double entry_threshold(const PolicyEntry& entry, CountProvider& provider) {
    return information_content(entry.generalization ? *entry.generalization : entry.entity,
                               provider);
}

RiskEvidence is_risky(const std::vector<std::string>& member_phrases, const PolicyEntry& entry,
                      bool contextualize, CountProvider& provider) {
    std::optional<std::string> ctx;
    if (contextualize) {
        if (!entry.generalization) {
            throw ConfigError("contextualization requires a generalization for entry '" +
                              entry.entity + "'");
        }
        ctx = *entry.generalization;
    }
    RiskEvidence ev;
    ev.threshold_bits = entry_threshold(entry, provider);
    ev.pmi_bits = pmi(entry.entity, make_query(member_phrases), ctx, provider);
    ev.risky = ev.pmi_bits > ev.threshold_bits;  // equality is safe
    return ev;
}

namespace {

GeneralizationAssignment select_impl(const std::vector<std::string>& members,
                                     const ProtectionPolicy& policy, const Taxonomy& tax,
                                     CountProvider& provider, bool check_rest_first) {
    GeneralizationAssignment out;
    if (members.empty()) return out;

    if (check_rest_first && safe_for_all(members, policy, provider)) {
        for (const auto& m : members) out[m] = m;
        return out;
    }

    if (members.size() == 1) {
        // Walk the chain upward; the first hypernym safe for every entry wins.
        const std::string& m = members.front();
        for (const auto& g : chain_of(m, tax)) {
            if (safe_for_all({g}, policy, provider)) {
                out[m] = g;
                return out;
            }
        }
        out[m] = std::nullopt;  // chain exhausted (or out of vocabulary)
        return out;
    }

    // Candidate options per member: itself plus its chain, keeping only
    // options that are individually safe -- an individually risky phrase can
    // never survive in the output, so tuples containing one are dead ends.
    std::vector<std::vector<std::string>> options(members.size());
    std::unordered_map<std::string, double> retained;
    for (std::size_t i = 0; i < members.size(); ++i) {
        std::vector<std::string> candidates{members[i]};
        for (auto& g : chain_of(members[i], tax)) candidates.push_back(std::move(g));
        for (auto& c : candidates) {
            if (!safe_for_all({c}, policy, provider)) continue;
            if (!retained.count(c)) retained[c] = retained_information(c, provider);
            options[i].push_back(std::move(c));
        }
    }

    std::size_t tuple_count = 1;
    for (const auto& opts : options) {
        if (opts.empty()) {
            tuple_count = 0;
            break;
        }
        if (tuple_count > (1u << 20) / opts.size()) {
            throw ConfigError("generalization lattice too large for group of " +
                              std::to_string(members.size()) + " terms");
        }
        tuple_count *= opts.size();
    }

    struct Tuple {
        std::vector<std::size_t> choice;
        double score;
        std::size_t index;
    };
    std::vector<Tuple> tuples;
    tuples.reserve(tuple_count);
    if (tuple_count > 0) {
        std::vector<std::size_t> choice(members.size(), 0);
        for (std::size_t idx = 0; idx < tuple_count; ++idx) {
            bool all_unchanged = true;
            double score = 0;
            for (std::size_t i = 0; i < members.size(); ++i) {
                const std::string& o = options[i][choice[i]];
                score += retained.at(o);
                all_unchanged = all_unchanged && o == members[i];
            }
            if (!all_unchanged) tuples.push_back(Tuple{choice, score, idx});
            // odometer: rightmost member varies fastest
            for (std::size_t i = members.size(); i-- > 0;) {
                if (++choice[i] < options[i].size()) break;
                choice[i] = 0;
            }
        }
    }
    std::stable_sort(tuples.begin(), tuples.end(), [](const Tuple& a, const Tuple& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.index < b.index;
    });

    for (const auto& tuple : tuples) {
        std::vector<std::string> phrases;
        for (std::size_t i = 0; i < members.size(); ++i) {
            const std::string& o = options[i][tuple.choice[i]];
            if (std::find(phrases.begin(), phrases.end(), o) == phrases.end()) phrases.push_back(o);
        }
        if (safe_for_all(phrases, policy, provider)) {
            for (std::size_t i = 0; i < members.size(); ++i) {
                out[members[i]] = options[i][tuple.choice[i]];
            }
            return out;
        }
    }

    // No tuple works: suppress the most informative member and resolve the
    // remainder.
    std::size_t victim = 0;
    double best = -1;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const double r = retained_information(members[i], provider);
        if (r > best) {
            best = r;
            victim = i;
        }
    }
    out[members[victim]] = std::nullopt;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i != victim) rest.push_back(members[i]);
    }
    auto rest_assignment = select_impl(rest, policy, tax, provider, /*check_rest_first=*/true);
    out.merge(rest_assignment);
    return out;
}

}  // namespace

GeneralizationAssignment select_generalizations(const std::vector<std::string>& member_phrases,
                                                const ProtectionPolicy& policy,
                                                const Taxonomy& tax, CountProvider& provider) {
    std::vector<std::string> unique;
    for (const auto& m : member_phrases) {
        if (std::find(unique.begin(), unique.end(), m) == unique.end()) unique.push_back(m);
    }
    return select_impl(unique, policy, tax, provider, /*check_rest_first=*/false);
}

namespace {

struct Unit {
    std::string surface;
    std::string current;
    bool suppressed = false;
    std::size_t chain_len = 0;
    std::vector<std::pair<std::size_t, std::size_t>> spans;
};

// Lexicographically next n-combination over 0..m-1; false when exhausted.
bool next_combination(std::vector<std::size_t>& comb, std::size_t m) {
    const std::size_t n = comb.size();
    for (std::size_t i = n; i-- > 0;) {
        if (comb[i] < m - (n - i)) {
            ++comb[i];
            for (std::size_t j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

SanitizeResult sanitize_document(std::string_view text, const ProtectionPolicy& policy,
                                 const SanitizerConfig& config, const Taxonomy& tax,
                                 CountProvider& provider, const StopwordList& stopwords) {
    if (config.max_cardinality < 1) throw ConfigError("max_cardinality must be >= 1");
    policy.validate(&tax);

    SanitizeResult result;
    std::vector<SpanReplacement> edits;

    const auto contexts = split_contexts(text, config.context_mode, config.window_tokens);
    for (std::size_t ctx_id = 0; ctx_id < contexts.size(); ++ctx_id) {
        const auto occurrences =
            extract_terms(text, contexts[ctx_id], tax, stopwords, config.extraction);
        if (occurrences.empty()) continue;

        // One unit per distinct surface: risk is surface-level, and a
        // replacement applies to every occurrence in the context.
        std::vector<Unit> units;
        std::unordered_map<std::string, std::size_t> unit_of;
        for (const auto& occ : occurrences) {
            auto [it, inserted] = unit_of.try_emplace(occ.surface, units.size());
            if (inserted) {
                Unit u;
                u.surface = occ.surface;
                u.current = occ.surface;
                u.chain_len = chain_of(occ.surface, tax).size();
                units.push_back(std::move(u));
            }
            units[it->second].spans.emplace_back(occ.begin, occ.end);
        }

        // H2: most informative first; ties in document order.
        std::vector<std::size_t> order(units.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::vector<double> ic(units.size());
        for (std::size_t i = 0; i < units.size(); ++i) {
            ic[i] = information_content(units[i].surface, provider);
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return ic[a] > ic[b];
        });

        const std::size_t max_n =
            std::min<std::size_t>(static_cast<std::size_t>(config.max_cardinality), units.size());
        std::unordered_set<std::string> cleared;

        // Rewrites only move up a chain or end in suppression, so the number
        // of productive passes is bounded.
        std::size_t pass_budget = 2;
        for (const auto& u : units) pass_budget += u.chain_len + 1;

        bool changed = true;
        while (changed) {
            if (pass_budget-- == 0) throw std::logic_error("sanitizer failed to reach a fixpoint");
            changed = false;
            for (std::size_t n = 1; n <= max_n; ++n) {
                std::vector<std::size_t> comb(n);
                for (std::size_t i = 0; i < n; ++i) comb[i] = i;
                do {
                    bool live = true;
                    for (std::size_t i : comb) live = live && !units[order[i]].suppressed;
                    if (!live) continue;

                    std::vector<std::string> mapped;
                    for (std::size_t i : comb) {
                        const std::string& cur = units[order[i]].current;
                        if (std::find(mapped.begin(), mapped.end(), cur) == mapped.end()) {
                            mapped.push_back(cur);
                        }
                    }
                    const std::string key = canonical_query(make_query(mapped));
                    if (cleared.count(key)) continue;

                    const PolicyEntry* flagged = nullptr;
                    RiskEvidence evidence;
                    for (const auto& entry : policy.entries) {
                        evidence = is_risky(mapped, entry, policy.contextualize, provider);
                        if (evidence.risky) {
                            flagged = &entry;
                            break;
                        }
                    }
                    if (flagged == nullptr) {
                        cleared.insert(key);
                        continue;
                    }

                    const auto assignment = select_generalizations(mapped, policy, tax, provider);

                    ReplacementRecord record;
                    record.context_id = static_cast<int>(ctx_id);
                    record.cardinality = static_cast<int>(mapped.size());
                    record.entity = flagged->entity;
                    record.pmi_bits = evidence.pmi_bits;
                    record.threshold_bits = evidence.threshold_bits;
                    std::vector<std::string> suppressed;
                    for (const auto& phrase : mapped) {
                        const auto& target = assignment.at(phrase);
                        record.originals.push_back(phrase);
                        record.replacements.push_back(target ? *target : config.suppression_marker);
                        if (!target) suppressed.push_back(phrase);
                    }
                    result.report.replacements.push_back(std::move(record));
                    if (!suppressed.empty()) {
                        result.report.residual_risk_flags.push_back(ResidualRiskRecord{
                            static_cast<int>(ctx_id), mapped, suppressed, flagged->entity});
                    }

                    std::vector<std::string> post;
                    for (std::size_t i : comb) {
                        Unit& u = units[order[i]];
                        const auto& target = assignment.at(u.current);
                        if (!target) {
                            u.suppressed = true;
                        } else {
                            u.current = *target;
                            if (std::find(post.begin(), post.end(), *target) == post.end()) {
                                post.push_back(*target);
                            }
                        }
                    }
                    // The post-assignment form was verified safe during
                    // selection; remember it so later passes skip it.
                    if (!post.empty()) cleared.insert(canonical_query(make_query(post)));
                    changed = true;
                } while (next_combination(comb, units.size()));
            }
        }

        for (const auto& u : units) {
            if (!u.suppressed && u.current == u.surface) continue;
            for (const auto& [b, e] : u.spans) {
                edits.push_back(SpanReplacement{b, e, u.suppressed ? config.suppression_marker
                                                                   : u.current});
            }
        }
    }

    result.text = apply_replacements(text, std::move(edits));
    return result;
}

}  // namespace textsan
