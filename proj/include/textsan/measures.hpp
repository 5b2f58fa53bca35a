#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "textsan/corpus.hpp"
#include "textsan/taxonomy.hpp"

namespace textsan {

// All quantities are in bits (log base 2). IC values are finite and >= 0:
// a zero marginal count is clamped to 1, so an unseen phrase gets
// log2(W) bits. PMI of a zero joint count is -infinity: no observed
// co-occurrence means no measurable disclosure.

// -log2(max(count(term), 1) / W)
double information_content(std::string_view term, CountProvider& provider);

// Informativeness a phrase actually contributes to the output: equals
// information_content for observed phrases, 0 for phrases the corpus has
// never seen. Under the clamp rule an unseen phrase would score log2(W) --
// the highest value possible -- so ranking replacements by raw IC would
// prefer generalizations with no corpus evidence over real ones. Used to
// order candidate tuples and to score retained utility.
double retained_information(std::string_view phrase, CountProvider& provider);

// Pointwise mutual information between an entity and a term set, optionally
// contextualized: with a context g every entity-side count becomes a
// co-occurrence count with g (joint and entity marginal alike); the term
// marginals are unchanged. With exact (local) counts the joint is clamped to
// min over the marginals first; estimated (web) counts are used raw.
double pmi(std::string_view entity, const PhraseQuery& terms,
           const std::optional<std::string>& context, CountProvider& provider);

// Concept occurrence stats for a sense-tagged corpus.
struct TaggedCorpusStats {
    std::unordered_map<std::string, std::uint64_t> occurrences;
    std::uint64_t total = 0;  // N: concept occurrences, not raw tokens
};

// Counts taxonomy-concept occurrences over the index's token streams via
// greedy longest-match against the lexicon.
TaggedCorpusStats tag_corpus(const LocalIndex& index, const Taxonomy& tax);

// -log2(max(sum of occurrences over the concept and its descendants, 1) / N)
double resnik_ic(std::string_view concept_name, const TaggedCorpusStats& stats,
                 const Taxonomy& tax);

}  // namespace textsan
