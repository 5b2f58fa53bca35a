#include "textsan/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "textsan/errors.hpp"
#include "textsan/measures.hpp"
#include "textsan/text.hpp"

namespace textsan {

AnnotationSet AnnotationSet::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open annotation file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

AnnotationSet AnnotationSet::parse(std::string_view content) {
    AnnotationSet set;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        const std::size_t eol = content.find('\n', pos);
        const std::string_view line = content.substr(
            pos, eol == std::string_view::npos ? content.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? content.size() + 1 : eol + 1;
        if (is_blank(line) || line.front() == '#') continue;
        set.add(line);
    }
    return set;
}

void AnnotationSet::add(std::string_view term) {
    std::string norm = normalize(term);
    if (!norm.empty()) terms_.insert(std::move(norm));
}

double f_measure(double precision_pct, double recall_pct) {
    const double sum = precision_pct + recall_pct;
    if (sum <= 0) return 0;
    return 2.0 * precision_pct * recall_pct / sum;
}

ScoreTriple score(const AnnotationSet& system, const AnnotationSet& gold) {
    if (gold.empty()) throw ConfigError("gold annotation set is empty; recall is undefined");
    ScoreTriple t;
    if (system.empty()) {
        t.empty_system = true;
        t.recall = 0;
        return t;
    }
    std::size_t hits = 0;
    for (const auto& s : system.terms()) hits += gold.terms().count(s);
    t.precision = 100.0 * static_cast<double>(hits) / static_cast<double>(system.terms().size());
    t.recall = 100.0 * static_cast<double>(hits) / static_cast<double>(gold.terms().size());
    t.f_measure = f_measure(t.precision, t.recall);
    return t;
}

SafetyReport oracle_safety_check(const std::vector<std::string>& surviving_terms,
                                 const ProtectionPolicy& policy, CountProvider& provider,
                                 std::size_t max_cardinality) {
    std::vector<std::string> terms;
    for (const auto& t : surviving_terms) {
        std::string norm = normalize(t);
        if (norm.empty()) continue;
        if (std::find(terms.begin(), terms.end(), norm) == terms.end()) terms.push_back(std::move(norm));
    }
    SafetyReport report;
    if (terms.empty()) return report;

    const std::size_t n = terms.size();
    const std::size_t top = std::min(max_cardinality, n);

    double subsets = 0;
    {
        double c = 1;
        for (std::size_t k = 1; k <= top; ++k) {
            c = c * static_cast<double>(n - k + 1) / static_cast<double>(k);
            subsets += c;
        }
    }
    if ((n > 20 && top >= n) || subsets > 4e6) {
        throw ConfigError("instance too large for exhaustive safety check: " +
                          std::to_string(n) + " terms at cardinality " + std::to_string(top));
    }

    const auto advance = [n](std::vector<std::size_t>& comb) {
        const std::size_t k = comb.size();
        for (std::size_t i = k; i-- > 0;) {
            if (comb[i] < n - (k - i)) {
                ++comb[i];
                for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    for (std::size_t card = 1; card <= top; ++card) {
        std::vector<std::size_t> comb(card);
        for (std::size_t i = 0; i < card; ++i) comb[i] = i;
        do {
            std::vector<std::string> subset;
            subset.reserve(card);
            for (std::size_t i : comb) subset.push_back(terms[i]);
            for (const auto& entry : policy.entries) {
                const auto ev = is_risky(subset, entry, policy.contextualize, provider);
                if (ev.risky) {
                    report.safe = false;
                    report.violations.push_back(
                        SafetyViolation{subset, entry.entity, ev.pmi_bits, ev.threshold_bits});
                }
            }
        } while (advance(comb));
    }
    return report;
}

OptimalAssignment oracle_optimal_utility(const std::vector<std::string>& terms,
                                         const ProtectionPolicy& policy, const Taxonomy& tax,
                                         CountProvider& provider) {
    std::vector<std::string> unique;
    for (const auto& t : terms) {
        std::string norm = normalize(t);
        if (norm.empty()) continue;
        if (std::find(unique.begin(), unique.end(), norm) == unique.end()) unique.push_back(std::move(norm));
    }
    if (unique.size() > 8) {
        throw ConfigError("instance too large for exhaustive utility search: " +
                          std::to_string(unique.size()) + " terms");
    }

    // Per-term candidates: keep, each chain element, suppress (nullopt).
    std::vector<std::vector<std::optional<std::string>>> candidates(unique.size());
    for (std::size_t i = 0; i < unique.size(); ++i) {
        candidates[i].emplace_back(unique[i]);
        if (auto concept_name = tax.resolve(unique[i])) {
            for (auto& g : tax.chain(*concept_name)) candidates[i].emplace_back(std::move(g));
        }
        candidates[i].emplace_back(std::nullopt);
    }

    std::optional<OptimalAssignment> best;
    std::vector<std::size_t> choice(unique.size(), 0);
    while (true) {
        std::vector<std::string> surviving;
        double retained = 0;
        for (std::size_t i = 0; i < unique.size(); ++i) {
            const auto& c = candidates[i][choice[i]];
            if (!c) continue;  // suppressed terms retain nothing
            retained += retained_information(*c, provider);
            if (std::find(surviving.begin(), surviving.end(), *c) == surviving.end()) {
                surviving.push_back(*c);
            }
        }
        const auto safety =
            oracle_safety_check(surviving, policy, provider, surviving.size());
        if (safety.safe && (!best || retained > best->retained_bits)) {
            best.emplace();
            best->retained_bits = retained;
            for (std::size_t i = 0; i < unique.size(); ++i) {
                best->assignment[unique[i]] = candidates[i][choice[i]];
            }
        }
        std::size_t i = unique.size();
        while (i-- > 0) {
            if (++choice[i] < candidates[i].size()) break;
            choice[i] = 0;
            if (i == 0) {
                // full-suppression is always safe, so a best assignment exists
                return *best;
            }
        }
        if (unique.empty()) break;
    }
    return best ? *best : OptimalAssignment{};
}

}  // namespace textsan
