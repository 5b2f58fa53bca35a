#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "textsan/corpus.hpp"

namespace textsan {

// Search endpoint configuration, loaded from JSON:
//   {
//     "url_template": "https://host/search?q={query}",
//     "count_path": "webPages.totalEstimatedMatches",
//     "total_units": 60000000000,
//     "api_key_env": "SEARCH_API_KEY",          // optional
//     "api_key_header": "X-Api-Key",            // optional, default shown
//     "max_retries": 3,                         // optional
//     "backoff_base_ms": 250                    // optional
//   }
// total_units (W) has no default: hit-count probabilities are meaningless
// without the index size, so the value must be stated explicitly.
struct WebProviderConfig {
    std::string url_template;  // must contain {query}
    std::string count_path;    // dot-separated path into the response body
    std::string api_key_env;
    std::string api_key_header = "X-Api-Key";
    std::uint64_t total_units = 0;
    int max_retries = 3;       // attempts beyond the first request
    int backoff_base_ms = 250;

    static WebProviderConfig load(const std::filesystem::path& path);
    void validate() const;  // throws ConfigError
};

// Hit-count client for a web search engine. Issues one GET per query,
// substituting the percent-encoded canonical query for {query}. Retries
// transient failures (network errors, 5xx, 429) with exponential backoff;
// a 429 always waits before the next attempt. Exhausting the retry budget or
// a non-retryable response raises ProviderError — callers abort, counts are
// never faked. Wrap in a CachingProvider to persist results.
class WebCountProvider final : public CountProvider {
public:
    explicit WebCountProvider(WebProviderConfig config);

    std::uint64_t count(const PhraseQuery& q) override;
    std::uint64_t total_units() const override { return config_.total_units; }
    CountSemantics semantics() const override { return CountSemantics::Estimated; }
    std::string identity() const override;

private:
    WebProviderConfig config_;
    std::string origin_;  // scheme://host[:port]
    std::string target_template_;  // path?query with {query} placeholder
    std::string api_key_;
};

std::string percent_encode(std::string_view raw);

}  // namespace textsan
