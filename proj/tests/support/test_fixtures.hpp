#pragma once

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "textsan/corpus.hpp"
#include "textsan/sanitizer.hpp"
#include "textsan/taxonomy.hpp"

namespace textsan::testing {

// Eight tiny documents with hand-checkable counts; W = 8.
inline std::vector<std::string> f8_documents() {
    return {
        "hiv virus azt fever", "hiv virus azt drug", "virus fever drug", "virus drug",
        "fever drug",          "drug",               "fever",            "wellness",
    };
}

inline const char* t8_text() {
    return "hiv\tvirus\n"
           "virus\tentity\n"
           "azt\tdrug\n"
           "drug\tentity\n"
           "fever\tsymptom\n"
           "symptom\tentity\n"
           "wellness\tstate\n"
           "state\tentity\n"
           "syn\thuman immunodeficiency virus\thiv\n";
}

inline Taxonomy t8() { return Taxonomy::parse(t8_text(), "t8"); }

inline std::filesystem::path fixtures_dir() {
    if (const char* env = std::getenv("TEXTSAN_FIXTURES")) return env;
    return "tests/fixtures";
}

inline std::filesystem::path unique_temp_dir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    auto dir = std::filesystem::temp_directory_path() /
               ("textsan_" + tag + "_" + std::to_string(rng()));
    std::filesystem::create_directories(dir);
    return dir;
}

// Randomized corpus + taxonomy + document + policy instances for the safety
// and utility properties. Concept names are single alphanumeric tokens.
struct RandomInstance {
    std::vector<std::string> corpus;
    std::string taxonomy_text;
    std::string document;
    ProtectionPolicy policy;
};

inline RandomInstance make_random_instance(std::mt19937_64& rng, std::size_t max_terms,
                                           std::size_t max_docs) {
    RandomInstance inst;

    // Taxonomy: 2-4 levels below a root, a few concepts per level, each with
    // its chain parent one level up (occasionally a second parent).
    const std::size_t levels = 2 + rng() % 3;
    std::vector<std::vector<std::string>> level_names(levels + 1);
    level_names[0] = {"root0"};
    std::string tax;
    int serial = 0;
    for (std::size_t lvl = 1; lvl <= levels; ++lvl) {
        const std::size_t width = 2 + rng() % 3;
        for (std::size_t i = 0; i < width; ++i) {
            std::string name = "c" + std::to_string(lvl) + std::to_string(serial++);
            const auto& parents = level_names[lvl - 1];
            tax += name + "\t" + parents[rng() % parents.size()] + "\n";
            if (parents.size() > 1 && rng() % 4 == 0) {
                const auto& extra = parents[rng() % parents.size()];
                tax += name + "\t" + extra + "\n";  // duplicates collapse in the loader
            }
            level_names[lvl].push_back(std::move(name));
        }
    }
    inst.taxonomy_text = tax;

    std::vector<std::string> vocab;
    for (std::size_t lvl = 1; lvl <= levels; ++lvl) {
        for (const auto& n : level_names[lvl]) vocab.push_back(n);
    }

    // Corpus: every vocab word appears somewhere, then random filler docs.
    const std::size_t docs = std::max<std::size_t>(4, 2 + rng() % max_docs);
    for (std::size_t d = 0; d < docs; ++d) {
        std::string doc;
        const std::size_t len = 1 + rng() % 6;
        for (std::size_t i = 0; i < len; ++i) {
            if (!doc.empty()) doc += ' ';
            doc += vocab[rng() % vocab.size()];
        }
        inst.corpus.push_back(std::move(doc));
    }

    // Document under protection: leaf-biased vocabulary, occasional unknown.
    const std::size_t terms = 1 + rng() % max_terms;
    for (std::size_t i = 0; i < terms; ++i) {
        if (!inst.document.empty()) inst.document += ' ';
        if (rng() % 8 == 0) {
            inst.document += "zzoov" + std::to_string(rng() % 3);
        } else {
            const auto& pool = rng() % 2 ? level_names[levels] : vocab;
            inst.document += pool[rng() % pool.size()];
        }
    }

    // Policy: 1-2 entries; entity from the vocabulary, threshold at a strict
    // ancestor when one exists below the root.
    const Taxonomy parsed = Taxonomy::parse(inst.taxonomy_text, "random");
    const std::size_t entries = 1 + rng() % 2;
    for (std::size_t e = 0; e < entries; ++e) {
        PolicyEntry entry;
        for (int tries = 0; tries < 16; ++tries) {
            entry.entity = vocab[rng() % vocab.size()];
            bool dup = false;
            for (const auto& prev : inst.policy.entries) dup = dup || prev.entity == entry.entity;
            if (!dup) break;
        }
        const auto chain = parsed.chain(entry.entity);
        entry.generalization = chain[rng() % chain.size()];
        inst.policy.entries.push_back(std::move(entry));
    }
    // entities may still collide after the retry cap; drop duplicates
    std::vector<PolicyEntry> dedup;
    for (auto& e : inst.policy.entries) {
        bool dup = false;
        for (const auto& prev : dedup) dup = dup || prev.entity == e.entity;
        if (!dup) dedup.push_back(std::move(e));
    }
    inst.policy.entries = std::move(dedup);
    inst.policy.contextualize = rng() % 2 == 0;
    return inst;
}

}  // namespace textsan::testing
