#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "textsan/corpus.hpp"

namespace textsan {

// Persistent count store keyed by canonical query strings. On disk: one
// record per line, `key<TAB>count<TAB>iso8601-utc`, append-only with
// last-write-wins on reload. Writes are serialized; a put is visible to
// every later get in the process.
class CountCache {
public:
    CountCache() = default;  // memory-only
    explicit CountCache(std::filesystem::path file);

    std::optional<std::uint64_t> get(const std::string& key) const;
    void put(const std::string& key, std::uint64_t count);

    std::size_t size() const;
    void clear();  // drops entries and truncates the backing file

    const std::filesystem::path& path() const { return path_; }

private:
    mutable std::mutex mutex_;
    std::unordered_map<std::string, std::uint64_t> entries_;
    std::filesystem::path path_;
    std::ofstream appender_;
};

// Wraps any provider with a CountCache: hits never reach the inner provider,
// misses are fetched once and persisted. Fetches for cache misses are
// serialized so every caller observes one value per key.
class CachingProvider final : public CountProvider {
public:
    CachingProvider(CountProvider& inner, CountCache& cache)
        : inner_(inner), cache_(cache) {}

    std::uint64_t count(const PhraseQuery& q) override;
    std::uint64_t total_units() const override { return inner_.total_units(); }
    CountSemantics semantics() const override { return inner_.semantics(); }
    std::string identity() const override { return inner_.identity() + "+cache"; }

private:
    CountProvider& inner_;
    CountCache& cache_;
    std::mutex fetch_mutex_;
};

std::string now_iso8601_utc();

}  // namespace textsan
