#pragma once

// Independent reference counter: no index, no bitmaps, no caching. Counts by
// scanning every document's token stream for each phrase. The measure and
// sanitizer tests check the production LocalIndex against this.

#include <string>
#include <vector>

#include "textsan/corpus.hpp"
#include "textsan/text.hpp"

namespace textsan::testing {

class NaiveCounter final : public CountProvider {
public:
    explicit NaiveCounter(const std::vector<std::string>& docs) {
        for (const auto& d : docs) docs_.push_back(phrase_tokens(d));
    }

    std::uint64_t count(const PhraseQuery& q) override {
        std::uint64_t n = 0;
        for (const auto& doc : docs_) {
            bool all = true;
            for (const auto& phrase : q.phrases()) {
                if (!contains_phrase(doc, phrase_tokens(phrase))) {
                    all = false;
                    break;
                }
            }
            if (all) ++n;
        }
        return n;
    }

    std::uint64_t total_units() const override { return docs_.size(); }
    CountSemantics semantics() const override { return CountSemantics::Exact; }
    std::string identity() const override { return "naive:<memory>"; }

private:
    static bool contains_phrase(const std::vector<std::string>& doc,
                                const std::vector<std::string>& phrase) {
        if (phrase.empty() || phrase.size() > doc.size()) return false;
        for (std::size_t s = 0; s + phrase.size() <= doc.size(); ++s) {
            bool hit = true;
            for (std::size_t i = 0; i < phrase.size(); ++i) {
                if (doc[s + i] != phrase[i]) {
                    hit = false;
                    break;
                }
            }
            if (hit) return true;
        }
        return false;
    }

    std::vector<std::vector<std::string>> docs_;
};

}  // namespace textsan::testing
