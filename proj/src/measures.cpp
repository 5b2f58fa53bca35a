#include "textsan/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "textsan/errors.hpp"
#include "textsan/textproc.hpp"

namespace textsan {

namespace {

std::uint64_t single_count(std::string_view phrase, CountProvider& provider) {
    PhraseQuery q;
    q.add(phrase);
    return provider.count(q);
}

double log2_clamped(std::uint64_t count) {
    return std::log2(static_cast<double>(std::max<std::uint64_t>(count, 1)));
}

}  // namespace

double information_content(std::string_view term, CountProvider& provider) {
    const double w = static_cast<double>(provider.total_units());
    return std::log2(w) - log2_clamped(single_count(term, provider));
}

double retained_information(std::string_view phrase, CountProvider& provider) {
    const std::uint64_t c = single_count(phrase, provider);
    if (c == 0) return 0.0;
    return std::log2(static_cast<double>(provider.total_units())) - std::log2(static_cast<double>(c));
}

double pmi(std::string_view entity, const PhraseQuery& terms,
           const std::optional<std::string>& context, CountProvider& provider) {
    if (terms.empty()) throw ConfigError("PMI requires a non-empty term set");

    PhraseQuery joint_query = terms;
    joint_query.add(entity);
    PhraseQuery entity_query;
    entity_query.add(entity);
    if (context) {
        joint_query.add(*context);
        entity_query.add(*context);
    }

    std::uint64_t joint = provider.count(joint_query);
    const std::uint64_t entity_marginal = provider.count(entity_query);
    std::vector<std::uint64_t> term_marginals;
    term_marginals.reserve(terms.size());
    for (const auto& t : terms.phrases()) term_marginals.push_back(single_count(t, provider));

    if (provider.semantics() == CountSemantics::Exact) {
        joint = std::min(joint, entity_marginal);
        for (auto m : term_marginals) joint = std::min(joint, m);
    }
    if (joint == 0) return -std::numeric_limits<double>::infinity();

    const double log_w = std::log2(static_cast<double>(provider.total_units()));
    double bits = std::log2(static_cast<double>(joint)) +
                  static_cast<double>(terms.size()) * log_w -
                  log2_clamped(entity_marginal);
    for (auto m : term_marginals) bits -= log2_clamped(m);
    return bits;
}

TaggedCorpusStats tag_corpus(const LocalIndex& index, const Taxonomy& tax) {
    TaggedCorpusStats stats;
    const LexiconMatcher matcher(tax);
    for (std::size_t d = 0; d < index.document_count(); ++d) {
        const auto tokens = index.document_tokens(d);
        for (const auto& m : matcher.match(tokens)) {
            ++stats.occurrences[m.concept];
            ++stats.total;
        }
    }
    return stats;
}

double resnik_ic(std::string_view concept_name, const TaggedCorpusStats& stats,
                 const Taxonomy& tax) {
    if (stats.total == 0) throw ConfigError("tagged corpus stats are empty");
    std::uint64_t subtree = 0;
    for (const auto& c : tax.descendants(concept_name)) {
        auto it = stats.occurrences.find(c);
        if (it != stats.occurrences.end()) subtree += it->second;
    }
    return std::log2(static_cast<double>(stats.total)) - log2_clamped(subtree);
}

}  // namespace textsan
