#include "textsan/count_cache.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>

#include "textsan/errors.hpp"

namespace textsan {

std::string now_iso8601_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                  tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

CountCache::CountCache(std::filesystem::path file) : path_(std::move(file)) {
    std::ifstream in(path_, std::ios::binary);
    if (in) {
        std::string line;
        while (std::getline(in, line)) {
            // key<TAB>count<TAB>timestamp; damaged lines only lose themselves
            const std::size_t t1 = line.find('\t');
            if (t1 == std::string::npos || t1 == 0) continue;
            const std::size_t t2 = line.find('\t', t1 + 1);
            if (t2 == std::string::npos) continue;
            std::uint64_t value = 0;
            const char* first = line.data() + t1 + 1;
            const char* last = line.data() + t2;
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc() || ptr != last) continue;
            entries_[line.substr(0, t1)] = value;  // last write wins
        }
    }
    appender_.open(path_, std::ios::binary | std::ios::app);
    if (!appender_) throw ConfigError("cannot open cache file for writing: " + path_.string());
}

std::optional<std::uint64_t> CountCache::get(const std::string& key) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void CountCache::put(const std::string& key, std::uint64_t count) {
    std::lock_guard lock(mutex_);
    entries_[key] = count;
    if (appender_.is_open()) {
        appender_ << key << '\t' << count << '\t' << now_iso8601_utc() << '\n';
        appender_.flush();
    }
}

std::size_t CountCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

void CountCache::clear() {
    std::lock_guard lock(mutex_);
    entries_.clear();
    if (!path_.empty()) {
        appender_.close();
        appender_.open(path_, std::ios::binary | std::ios::trunc);
        if (!appender_) throw ConfigError("cannot truncate cache file: " + path_.string());
    }
}

std::uint64_t CachingProvider::count(const PhraseQuery& q) {
    const std::string key = canonical_query(q);
    if (auto hit = cache_.get(key)) return *hit;
    std::lock_guard lock(fetch_mutex_);
    if (auto hit = cache_.get(key)) return *hit;
    const std::uint64_t n = inner_.count(q);
    cache_.put(key, n);
    return n;
}

}  // namespace textsan
