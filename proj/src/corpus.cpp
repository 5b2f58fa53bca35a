#include "textsan/corpus.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <mutex>
#include <sstream>

#include "textsan/errors.hpp"
#include "textsan/kernels/bitset_ops.hpp"
#include "textsan/text.hpp"

namespace textsan {

PhraseQuery::PhraseQuery(std::initializer_list<std::string_view> phrases) {
    for (auto p : phrases) add(p);
}

void PhraseQuery::add(std::string_view phrase) {
    std::string norm = normalize(phrase);
    if (norm.empty()) throw ConfigError("empty phrase in query");
    auto it = std::lower_bound(phrases_.begin(), phrases_.end(), norm);
    if (it == phrases_.end() || *it != norm) phrases_.insert(it, std::move(norm));
}

std::string canonical_query(const PhraseQuery& q) {
    std::string out;
    for (const auto& p : q.phrases()) {
        if (!out.empty()) out += " AND ";
        out += '"';
        out += p;
        out += '"';
    }
    return out;
}

LocalIndex LocalIndex::from_directory(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw ConfigError("local corpus is not a directory: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());  // directory order is not stable
    std::vector<std::string> texts;
    texts.reserve(files.size());
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        if (!in) throw ConfigError("cannot read corpus document: " + f.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        texts.push_back(buf.str());
    }
    if (texts.empty()) throw ConfigError("local corpus directory is empty: " + dir.string());
    return from_documents(texts, "local:" + dir.string());
}

LocalIndex LocalIndex::from_documents(const std::vector<std::string>& texts,
                                      std::string origin) {
    if (texts.empty()) throw ConfigError("local corpus has no documents");
    LocalIndex idx;
    idx.origin_ = std::move(origin);
    idx.doc_count_ = texts.size();
    idx.words_ = (texts.size() + 63) / 64;
    for (const auto& t : texts) idx.add_document(t);
    return idx;
}

void LocalIndex::add_document(std::string_view text) {
    const std::size_t doc = docs_.size();
    std::vector<std::uint32_t> ids;
    for (const auto& tok : tokenize(text)) {
        auto [it, inserted] = vocab_.try_emplace(tok.norm, static_cast<std::uint32_t>(token_names_.size()));
        if (inserted) {
            token_names_.push_back(tok.norm);
            postings_.emplace_back(words_, 0);
        }
        ids.push_back(it->second);
        postings_[it->second][doc >> 6] |= 1ull << (doc & 63);
    }
    docs_.push_back(std::move(ids));
}

std::vector<std::string> LocalIndex::document_tokens(std::size_t doc) const {
    std::vector<std::string> out;
    out.reserve(docs_.at(doc).size());
    for (auto id : docs_[doc]) out.push_back(token_names_[id]);
    return out;
}

LocalIndex::Bitmap LocalIndex::compute_phrase_bitmap(const std::string& phrase) const {
    Bitmap result(words_, 0);
    auto tokens = phrase_tokens(phrase);
    if (tokens.empty()) return result;

    std::vector<std::uint32_t> ids;
    for (const auto& t : tokens) {
        auto it = vocab_.find(t);
        if (it == vocab_.end()) return result;  // unseen token: no document matches
        ids.push_back(it->second);
    }

    if (ids.size() == 1) return postings_[ids[0]];

    // Candidates must contain every token; contiguity is verified by scanning
    // the candidate's token stream.
    Bitmap candidates = postings_[ids[0]];
    for (std::size_t i = 1; i < ids.size(); ++i) {
        kernels::and_inplace(candidates, postings_[ids[i]]);
    }
    for (std::size_t w = 0; w < candidates.size(); ++w) {
        std::uint64_t bits = candidates[w];
        while (bits) {
            const std::size_t doc = (w << 6) + static_cast<std::size_t>(std::countr_zero(bits));
            bits &= bits - 1;
            const auto& stream = docs_[doc];
            bool found = false;
            for (std::size_t s = 0; s + ids.size() <= stream.size() && !found; ++s) {
                found = std::equal(ids.begin(), ids.end(), stream.begin() + static_cast<std::ptrdiff_t>(s));
            }
            if (!found) candidates[w] &= ~(1ull << (doc & 63));
        }
    }
    return candidates;
}

const LocalIndex::Bitmap* LocalIndex::cached_phrase_bitmap(const std::string& phrase) const {
    auto it = phrase_bitmaps_.find(phrase);
    if (it != phrase_bitmaps_.end()) return &it->second;
    return nullptr;
}

std::uint64_t LocalIndex::count(const PhraseQuery& q) {
    if (q.empty()) throw ConfigError("empty query");
    const std::string key = canonical_query(q);
    {
        std::shared_lock lock(mutex_);
        auto it = count_memo_.find(key);
        if (it != count_memo_.end()) return it->second;
    }

    std::unique_lock lock(mutex_);
    auto it = count_memo_.find(key);
    if (it != count_memo_.end()) return it->second;

    std::vector<const Bitmap*> maps;
    maps.reserve(q.size());
    for (const auto& p : q.phrases()) {
        const Bitmap* bm = cached_phrase_bitmap(p);
        if (bm == nullptr) {
            auto [ins, _] = phrase_bitmaps_.emplace(p, compute_phrase_bitmap(p));
            bm = &ins->second;
        }
        maps.push_back(bm);
    }

    std::uint64_t n = 0;
    switch (maps.size()) {
        case 1:
            n = kernels::popcount_words(*maps[0]);
            break;
        case 2:
            n = kernels::and_popcount(*maps[0], *maps[1]);
            break;
        case 3:
            n = kernels::and3_popcount(*maps[0], *maps[1], *maps[2]);
            break;
        default: {
            Bitmap acc = *maps[0];
            for (std::size_t i = 1; i < maps.size(); ++i) kernels::and_inplace(acc, *maps[i]);
            n = kernels::popcount_words(acc);
            break;
        }
    }
    count_memo_.emplace(key, n);
    return n;
}

}  // namespace textsan
