#include "textsan/web_provider.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "textsan/errors.hpp"

namespace textsan {

namespace {

using nlohmann::json;

json get_path(const json& body, const std::string& dot_path) {
    const json* cur = &body;
    std::size_t start = 0;
    while (start <= dot_path.size()) {
        std::size_t dot = dot_path.find('.', start);
        std::string key = dot_path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!cur->is_object() || !cur->contains(key)) {
            throw ProviderError("count field '" + dot_path + "' missing from response");
        }
        cur = &(*cur)[key];
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return *cur;
}

std::uint64_t extract_count(const std::string& body, const std::string& dot_path) {
    json parsed;
    try {
        parsed = json::parse(body);
    } catch (const json::exception& e) {
        throw ProviderError(std::string("malformed response body: ") + e.what());
    }
    const json value = get_path(parsed, dot_path);
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer()) {
        const auto v = value.get<std::int64_t>();
        if (v < 0) throw ProviderError("negative count in response");
        return static_cast<std::uint64_t>(v);
    }
    if (value.is_string()) {
        try {
            return std::stoull(value.get<std::string>());
        } catch (...) {
            throw ProviderError("count field is not numeric: " + value.dump());
        }
    }
    throw ProviderError("count field is not numeric: " + value.dump());
}

}  // namespace

std::string percent_encode(std::string_view raw) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(raw.size() * 3);
    for (unsigned char c : raw) {
        const bool unreserved = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                                (c >= '0' && c <= '9') || c == '-' || c == '_' ||
                                c == '.' || c == '~';
        if (unreserved) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xf]);
        }
    }
    return out;
}

WebProviderConfig WebProviderConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open provider config: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    WebProviderConfig cfg;
    try {
        cfg.url_template = doc.at("url_template").get<std::string>();
        cfg.count_path = doc.at("count_path").get<std::string>();
        cfg.total_units = doc.at("total_units").get<std::uint64_t>();
        cfg.api_key_env = doc.value("api_key_env", std::string{});
        cfg.api_key_header = doc.value("api_key_header", std::string{"X-Api-Key"});
        cfg.max_retries = doc.value("max_retries", 3);
        cfg.backoff_base_ms = doc.value("backoff_base_ms", 250);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    cfg.validate();
    return cfg;
}

void WebProviderConfig::validate() const {
    if (url_template.find("{query}") == std::string::npos) {
        throw ConfigError("url_template must contain a {query} placeholder");
    }
    if (count_path.empty()) throw ConfigError("count_path must not be empty");
    if (total_units == 0) throw ConfigError("total_units (W) is required and must be >= 1");
    if (max_retries < 0) throw ConfigError("max_retries must be >= 0");
    if (backoff_base_ms < 0) throw ConfigError("backoff_base_ms must be >= 0");
}

WebCountProvider::WebCountProvider(WebProviderConfig config) : config_(std::move(config)) {
    config_.validate();
    const std::string& url = config_.url_template;
    const std::size_t scheme = url.find("://");
    if (scheme == std::string::npos) throw ConfigError("url_template must be an absolute URL");
    const std::size_t host_end = url.find('/', scheme + 3);
    if (host_end == std::string::npos) throw ConfigError("url_template has no path component");
    origin_ = url.substr(0, host_end);
    target_template_ = url.substr(host_end);
    if (!config_.api_key_env.empty()) {
        const char* key = std::getenv(config_.api_key_env.c_str());
        if (key == nullptr) {
            throw ConfigError("API key environment variable not set: " + config_.api_key_env);
        }
        api_key_ = key;
    }
}

std::string WebCountProvider::identity() const {
    return "web:" + origin_;
}

std::uint64_t WebCountProvider::count(const PhraseQuery& q) {
    const std::string key = canonical_query(q);
    std::string target = target_template_;
    const std::size_t ph = target.find("{query}");
    target.replace(ph, 7, percent_encode(key));

    httplib::Client client(origin_);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(30, 0);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace(config_.api_key_header, api_key_);

    std::string last_error;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0 && config_.backoff_base_ms > 0) {
            const auto wait = std::chrono::milliseconds(
                static_cast<long long>(config_.backoff_base_ms) << (attempt - 1));
            std::this_thread::sleep_for(wait);
        }
        auto res = client.Get(target, headers);
        if (!res) {
            last_error = "network error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 200) {
            try {
                return extract_count(res->body, config_.count_path);
            } catch (const ProviderError& e) {
                last_error = e.what();
                continue;
            }
        }
        if (res->status == 429 || res->status >= 500) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        throw ProviderError("query " + key + " rejected: HTTP " + std::to_string(res->status));
    }
    throw ProviderError("query " + key + " failed after " +
                        std::to_string(config_.max_retries + 1) + " attempts; last error: " + last_error);
}

}  // namespace textsan
