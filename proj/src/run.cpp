#include "textsan/run.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "textsan/errors.hpp"
#include "textsan/evaluation.hpp"
#include "textsan/measures.hpp"
#include "textsan/sanitizer.hpp"
#include "textsan/text.hpp"
#include "textsan/web_provider.hpp"

namespace textsan {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Write via a sibling temp file and rename, so a failed run never leaves a
// partial output behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write file: " + path.string());
        out << content;
        out.flush();
        if (!out) throw ConfigError("short write: " + path.string());
    }
    std::filesystem::rename(tmp, path);
}

ContextMode parse_context_mode(const std::string& mode, std::size_t& window_tokens) {
    window_tokens = 0;
    if (mode == "whole-document") return ContextMode::WholeDocument;
    if (mode == "paragraph") return ContextMode::Paragraph;
    if (mode == "sentence") return ContextMode::Sentence;
    if (mode.rfind("window:", 0) == 0) {
        const std::string k = mode.substr(7);
        try {
            const long parsed = std::stol(k);
            if (parsed < 1) throw ConfigError("window size must be >= 1");
            window_tokens = static_cast<std::size_t>(parsed);
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            throw ConfigError("bad window size: '" + k + "'");
        }
        return ContextMode::Window;
    }
    throw ConfigError("unknown context mode: '" + mode +
                      "' (expected whole-document, paragraph, sentence or window:<k>)");
}

std::string format_bits(double bits) {
    if (std::isinf(bits)) return bits < 0 ? "-inf" : "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", bits);
    return buf;
}

ordered_json report_json(const SanitizationReport& report, const RunConfig& config,
                         CountProvider& provider, const std::string& policy_bytes) {
    ordered_json meta;
    meta["policy_hash"] = "fnv1a:" + fnv1a_hex(policy_bytes);
    meta["provider"] = provider.identity();
    meta["total_units"] = provider.total_units();
    meta["config"] = {
        {"max_cardinality", config.max_cardinality},
        {"context_mode", config.context_mode},
        {"contextualize", config.contextualize},
        {"suppression_marker", config.suppression_marker},
        {"min_oov_length", config.min_oov_length},
    };

    ordered_json replacements = ordered_json::array();
    for (const auto& r : report.replacements) {
        replacements.push_back({
            {"context_id", r.context_id},
            {"originals", r.originals},
            {"replacements", r.replacements},
            {"cardinality", r.cardinality},
            {"entity", r.entity},
            {"pmi_bits", r.pmi_bits},
            {"threshold_bits", r.threshold_bits},
        });
    }
    ordered_json residual = ordered_json::array();
    for (const auto& f : report.residual_risk_flags) {
        residual.push_back({
            {"context_id", f.context_id},
            {"member_phrases", f.member_phrases},
            {"suppressed", f.suppressed},
            {"entity", f.entity},
        });
    }

    ordered_json doc;
    doc["metadata"] = std::move(meta);
    doc["replacements"] = std::move(replacements);
    doc["residual_risk_flags"] = std::move(residual);
    return doc;
}

}  // namespace

ProviderHandle make_provider(const std::string& spec, const std::filesystem::path& cache_path) {
    ProviderHandle handle;
    if (spec.rfind("local:", 0) == 0) {
        handle.base = std::make_unique<LocalIndex>(LocalIndex::from_directory(spec.substr(6)));
    } else if (spec.rfind("web:", 0) == 0) {
        handle.base = std::make_unique<WebCountProvider>(WebProviderConfig::load(spec.substr(4)));
        if (cache_path.empty()) {
            throw ConfigError("web provider requires --cache so counts are persisted");
        }
    } else {
        throw ConfigError("bad provider spec '" + spec +
                          "' (expected local:<dir> or web:<config.json>)");
    }
    if (!cache_path.empty()) {
        handle.cache = std::make_unique<CountCache>(cache_path);
        handle.cached = std::make_unique<CachingProvider>(*handle.base, *handle.cache);
    }
    return handle;
}

int run_sanitize(const RunConfig& config, std::ostream& diag) {
    try {
        const std::string input_text = read_file(config.input);
        const std::string policy_bytes = read_file(config.policy);
        const Taxonomy tax = Taxonomy::load(config.taxonomy);
        const ProtectionPolicy policy =
            ProtectionPolicy::parse(policy_bytes, config.policy.string(), config.contextualize);
        policy.validate(&tax);

        StopwordList stopwords;
        if (!config.stopwords.empty()) stopwords = StopwordList::load(config.stopwords);

        SanitizerConfig scfg;
        scfg.max_cardinality = config.max_cardinality;
        scfg.context_mode = parse_context_mode(config.context_mode, scfg.window_tokens);
        scfg.suppression_marker = config.suppression_marker;
        scfg.extraction.min_oov_length = config.min_oov_length;

        ProviderHandle handle = make_provider(config.provider_spec, config.cache);

        const SanitizeResult result =
            sanitize_document(input_text, policy, scfg, tax, handle.provider(), stopwords);

        const ordered_json report =
            report_json(result.report, config, handle.provider(), policy_bytes);

        write_file_atomic(config.output, result.text);
        write_file_atomic(config.report, report.dump(2) + "\n");
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_evaluate(const std::filesystem::path& system_path,
                 const std::filesystem::path& gold_path, std::ostream& out, std::ostream& diag) {
    try {
        const AnnotationSet system = AnnotationSet::load(system_path);
        const AnnotationSet gold = AnnotationSet::load(gold_path);
        const ScoreTriple t = score(system, gold);
        if (t.empty_system) diag << "note: system set is empty; precision reported as 0\n";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.1f %.1f %.1f\n", t.precision, t.recall, t.f_measure);
        out << buf;
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_measure(const std::string& kind, const std::string& entity,
                const std::vector<std::string>& terms, const std::optional<std::string>& context,
                const std::string& provider_spec, const std::filesystem::path& cache_path,
                std::ostream& out, std::ostream& diag) {
    try {
        ProviderHandle handle = make_provider(provider_spec, cache_path);
        double bits = 0;
        if (kind == "ic") {
            bits = information_content(entity, handle.provider());
        } else if (kind == "pmi") {
            PhraseQuery q;
            for (const auto& t : terms) q.add(t);
            bits = pmi(entity, q, context, handle.provider());
        } else {
            throw ConfigError("unknown measure kind: '" + kind + "'");
        }
        out << format_bits(bits) << '\n';
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_cache_stats(const std::filesystem::path& cache_path, std::ostream& out, std::ostream& diag) {
    try {
        CountCache cache(cache_path);
        out << "file: " << cache_path.string() << '\n';
        out << "entries: " << cache.size() << '\n';
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_cache_clear(const std::filesystem::path& cache_path, std::ostream& out, std::ostream& diag) {
    try {
        CountCache cache(cache_path);
        const std::size_t had = cache.size();
        cache.clear();
        out << "cleared " << had << " entries\n";
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace textsan
