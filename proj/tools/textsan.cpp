// Command-line front end: sanitize, evaluate, measure, cache.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "textsan/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"textsan: information-theoretic document sanitization"};
    app.require_subcommand(1);

    // sanitize
    textsan::RunConfig cfg;
    std::string input, policy, taxonomy, output, report, cache, stopwords;
    auto* sanitize = app.add_subcommand("sanitize", "Sanitize a document against a policy");
    sanitize->add_option("-i,--input", input, "Document to sanitize")->required();
    sanitize->add_option("-p,--policy", policy, "Protection policy file")->required();
    sanitize->add_option("-t,--taxonomy", taxonomy, "Taxonomy file")->required();
    sanitize->add_option("--provider", cfg.provider_spec,
                         "Count provider: local:<dir> or web:<config.json>")->required();
    sanitize->add_option("-o,--output", output, "Sanitized output path")->required();
    sanitize->add_option("-r,--report", report, "JSON report path")->required();
    sanitize->add_option("--max-cardinality", cfg.max_cardinality,
                         "Largest term group analyzed (default 1)");
    sanitize->add_option("--context", cfg.context_mode,
                         "whole-document|paragraph|sentence|window:<k> (default whole-document)");
    sanitize->add_flag("--contextualize", cfg.contextualize,
                       "Contextualize entity counts by each entry's generalization");
    sanitize->add_option("--marker", cfg.suppression_marker,
                         "Suppression marker (default [REDACTED])");
    sanitize->add_option("--cache", cache, "Persistent count cache file");
    sanitize->add_option("--stopwords", stopwords, "Stopword list (one word per line)");
    sanitize->add_option("--min-oov-len", cfg.min_oov_length,
                         "Minimum length of out-of-vocabulary terms (default 3)");

    // evaluate
    std::string system_path, gold_path;
    auto* evaluate = app.add_subcommand("evaluate", "Score system annotations against gold");
    evaluate->add_option("--system", system_path, "System-detected terms, one per line")->required();
    evaluate->add_option("--gold", gold_path, "Gold terms, one per line")->required();

    // measure
    auto* measure = app.add_subcommand("measure", "Print IC or PMI in bits");
    std::string m_phrase, m_entity, m_provider, m_cache, m_ctx;
    std::vector<std::string> m_terms;
    auto* mic = measure->add_subcommand("ic", "Information content of a phrase");
    mic->add_option("--phrase", m_phrase, "Phrase to measure")->required();
    mic->add_option("--provider", m_provider, "local:<dir> or web:<config.json>")->required();
    mic->add_option("--cache", m_cache, "Persistent count cache file");
    auto* mpmi = measure->add_subcommand("pmi", "PMI between an entity and a term set");
    mpmi->add_option("--entity", m_entity, "Protected entity")->required();
    mpmi->add_option("--term", m_terms, "Term (repeatable)")->required();
    mpmi->add_option("--ctx", m_ctx, "Contextualizing generalization");
    mpmi->add_option("--provider", m_provider, "local:<dir> or web:<config.json>")->required();
    mpmi->add_option("--cache", m_cache, "Persistent count cache file");
    measure->require_subcommand(1);

    // cache
    auto* cache_cmd = app.add_subcommand("cache", "Inspect or clear a count cache");
    std::string c_path;
    auto* cstats = cache_cmd->add_subcommand("stats", "Print cache statistics");
    cstats->add_option("--cache", c_path, "Cache file")->required();
    auto* cclear = cache_cmd->add_subcommand("clear", "Drop all cached counts");
    cclear->add_option("--cache", c_path, "Cache file")->required();
    cache_cmd->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    if (sanitize->parsed()) {
        cfg.input = input;
        cfg.policy = policy;
        cfg.taxonomy = taxonomy;
        cfg.output = output;
        cfg.report = report;
        cfg.cache = cache;
        cfg.stopwords = stopwords;
        return textsan::run_sanitize(cfg, std::cerr);
    }
    if (evaluate->parsed()) {
        return textsan::run_evaluate(system_path, gold_path, std::cout, std::cerr);
    }
    if (measure->parsed()) {
        if (mic->parsed()) {
            return textsan::run_measure("ic", m_phrase, {}, std::nullopt, m_provider, m_cache,
                                        std::cout, std::cerr);
        }
        return textsan::run_measure("pmi", m_entity, m_terms,
                                    m_ctx.empty() ? std::nullopt : std::make_optional(m_ctx),
                                    m_provider, m_cache, std::cout, std::cerr);
    }
    if (cache_cmd->parsed()) {
        if (cstats->parsed()) return textsan::run_cache_stats(c_path, std::cout, std::cerr);
        return textsan::run_cache_clear(c_path, std::cout, std::cerr);
    }
    return 1;
}
