#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "textsan/corpus.hpp"
#include "textsan/count_cache.hpp"

namespace textsan {

// Everything a sanitization run needs. Provider spec is either
// `local:<corpus dir>` or `web:<config.json>`.
struct RunConfig {
    std::filesystem::path input;
    std::filesystem::path policy;
    std::filesystem::path taxonomy;
    std::string provider_spec;
    std::filesystem::path output;
    std::filesystem::path report;
    std::filesystem::path cache;      // optional; required mainly for web runs
    std::filesystem::path stopwords;  // optional; no stopwords when empty
    int max_cardinality = 1;
    std::string context_mode = "whole-document";  // paragraph|sentence|window:<k>
    bool contextualize = false;
    std::string suppression_marker = "[REDACTED]";
    std::size_t min_oov_length = 3;
};

// Owns a provider chain (base provider plus optional file-backed cache).
struct ProviderHandle {
    std::unique_ptr<CountProvider> base;
    std::unique_ptr<CountCache> cache;
    std::unique_ptr<CountProvider> cached;  // set when a cache wraps the base

    CountProvider& provider() { return cached ? *cached : *base; }
};

ProviderHandle make_provider(const std::string& spec, const std::filesystem::path& cache_path);

// Entry points behind the CLI subcommands. Each returns a process exit
// status, writes diagnostics to `diag`, and never leaves partial outputs.
int run_sanitize(const RunConfig& config, std::ostream& diag);
int run_evaluate(const std::filesystem::path& system_path,
                 const std::filesystem::path& gold_path, std::ostream& out, std::ostream& diag);
int run_measure(const std::string& kind, const std::string& entity,
                const std::vector<std::string>& terms, const std::optional<std::string>& context,
                const std::string& provider_spec, const std::filesystem::path& cache_path,
                std::ostream& out, std::ostream& diag);
int run_cache_stats(const std::filesystem::path& cache_path, std::ostream& out, std::ostream& diag);
int run_cache_clear(const std::filesystem::path& cache_path, std::ostream& out, std::ostream& diag);

}  // namespace textsan
