#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace textsan {

// Deduplicated, normalized, unordered set of query phrases: {a,b} == {b,a}.
class PhraseQuery {
public:
    PhraseQuery() = default;
    PhraseQuery(std::initializer_list<std::string_view> phrases);

    // Normalizes and inserts; duplicates collapse. Throws ConfigError for
    // phrases that normalize to the empty string.
    void add(std::string_view phrase);

    const std::vector<std::string>& phrases() const { return phrases_; }
    bool empty() const { return phrases_.empty(); }
    std::size_t size() const { return phrases_.size(); }

    bool operator==(const PhraseQuery&) const = default;

private:
    std::vector<std::string> phrases_;  // kept sorted
};

// `"a" AND "b"`: each phrase double-quoted, sorted lexicographically, joined
// with ` AND `. Stable across runs; the cache key format.
std::string canonical_query(const PhraseQuery& q);

enum class CountSemantics {
    Exact,      // counts come from a real index; anti-monotone by construction
    Estimated,  // search-engine style estimates; may violate anti-monotonicity
};

// How many corpus units contain all of these phrases.
class CountProvider {
public:
    virtual ~CountProvider() = default;
    virtual std::uint64_t count(const PhraseQuery& q) = 0;
    virtual std::uint64_t total_units() const = 0;  // W
    virtual CountSemantics semantics() const = 0;
    virtual std::string identity() const = 0;
};

// Boolean document-frequency index over a set of plain-text documents (one
// document per file when loaded from a directory). A multi-word phrase
// matches only as a contiguous token run. Deterministic; callable from
// multiple threads.
class LocalIndex final : public CountProvider {
public:
    static LocalIndex from_directory(const std::filesystem::path& dir);
    static LocalIndex from_documents(const std::vector<std::string>& texts,
                                     std::string origin = "local:<memory>");

    std::uint64_t count(const PhraseQuery& q) override;
    std::uint64_t total_units() const override { return doc_count_; }
    CountSemantics semantics() const override { return CountSemantics::Exact; }
    std::string identity() const override { return origin_; }

    std::size_t document_count() const { return doc_count_; }
    std::vector<std::string> document_tokens(std::size_t doc) const;

private:
    using Bitmap = std::vector<std::uint64_t>;

    std::uint64_t doc_count_ = 0;
    std::size_t words_ = 0;  // bitmap length in 64-bit words
    std::string origin_;
    std::vector<std::string> token_names_;
    std::unordered_map<std::string, std::uint32_t> vocab_;
    std::vector<std::vector<std::uint32_t>> docs_;  // token ids, in order
    std::vector<Bitmap> postings_;                  // token id -> documents

    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<std::string, Bitmap> phrase_bitmaps_;
    mutable std::unordered_map<std::string, std::uint64_t> count_memo_;

    void add_document(std::string_view text);
    Bitmap compute_phrase_bitmap(const std::string& phrase) const;
    const Bitmap* cached_phrase_bitmap(const std::string& phrase) const;
};

}  // namespace textsan
