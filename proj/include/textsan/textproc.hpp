#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "textsan/taxonomy.hpp"

namespace textsan {

enum class ContextMode {
    WholeDocument,
    Paragraph,  // split on blank lines
    Sentence,   // split after .?! followed by whitespace
    Window,     // consecutive non-overlapping k-token blocks
};

// Half-open byte range. Contexts partition the document: spans are adjacent
// and cover the whole text.
struct ContextSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

std::vector<ContextSpan> split_contexts(std::string_view text, ContextMode mode,
                                        std::size_t window_tokens = 0);

struct TermOccurrence {
    std::string surface;                 // normalized matched text
    std::optional<std::string> concept;  // nullopt: out of vocabulary
    std::size_t begin = 0;               // byte span in the source text
    std::size_t end = 0;
};

class StopwordList {
public:
    StopwordList() = default;
    static StopwordList load(const std::filesystem::path& path);
    void add(std::string_view word) { words_.insert(normalize(word)); }
    bool contains(const std::string& normalized_word) const {
        return words_.count(normalized_word) != 0;
    }
    std::size_t size() const { return words_.size(); }

private:
    std::set<std::string> words_;
};

// Greedy longest-match of token runs against the taxonomy lexicon
// (canonical concept names and synonyms), scanning left to right.
class LexiconMatcher {
public:
    explicit LexiconMatcher(const Taxonomy& tax) : tax_(tax) {}

    struct Match {
        std::size_t first_token = 0;
        std::size_t token_count = 0;
        std::string surface;  // matched tokens joined by single spaces
        std::string concept;
    };

    std::vector<Match> match(std::span<const std::string> tokens) const;

private:
    const Taxonomy& tax_;
};

struct ExtractionOptions {
    std::size_t min_oov_length = 3;  // bytes; shorter unmatched tokens are dropped
};

// In-vocabulary occurrences via longest match; unmatched tokens that are not
// stopwords and meet the length floor become out-of-vocabulary occurrences.
// Duplicate surfaces stay distinct occurrences.
std::vector<TermOccurrence> extract_terms(std::string_view text, const ContextSpan& context,
                                          const Taxonomy& tax, const StopwordList& stopwords,
                                          const ExtractionOptions& options = {});

struct SpanReplacement {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string text;
};

// Splices replacements into the text. Spans must be valid and pairwise
// disjoint; overlap is an internal invariant violation and throws
// std::logic_error. Bytes outside replaced spans are preserved exactly.
std::string apply_replacements(std::string_view text, std::vector<SpanReplacement> replacements);

}  // namespace textsan
