#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace textsan {

// Directed acyclic hypernym graph with a synonym lexicon. Concepts are
// identified by their canonical (normalized) surface form, which doubles as
// the corpus query phrase. Immutable after load; safe for concurrent reads.
//
// File format, one record per line:
//   child<TAB>parent          hypernym edge (both canonical forms)
//   syn<TAB>surface<TAB>concept   synonym mapping
// `#` starts a comment; blank lines are ignored. Exactly one concept must be
// parentless: the root.
class Taxonomy {
public:
    static Taxonomy load(const std::filesystem::path& path);
    static Taxonomy parse(std::string_view content, std::string_view origin = "<memory>");

    const std::string& root() const { return root_; }
    bool contains(std::string_view concept_name) const;

    // Surface form -> concept, through the synonym lexicon; canonical concept
    // names resolve to themselves. Input is normalized first.
    std::optional<std::string> resolve(std::string_view surface) const;

    // Hypernym path from the concept's first-listed parent up to the root;
    // empty for the root itself. Throws ConfigError on unknown concepts.
    std::vector<std::string> chain(std::string_view concept_name) const;

    // True iff `ancestor` is reachable from `descendant` over hypernym edges
    // (all parents considered). Reflexive.
    bool is_hypernym(std::string_view ancestor, std::string_view descendant) const;

    // The concept and every specialization below it.
    std::vector<std::string> descendants(std::string_view concept_name) const;

    const std::vector<std::string>& concepts() const { return concepts_; }

    // Longest surface in the lexicon, in tokens; bounds the extraction window.
    std::size_t max_surface_tokens() const { return max_surface_tokens_; }

    // Reloadable textual form; parse(serialize()) reproduces the structure.
    std::string serialize() const;

private:
    std::vector<std::string> concepts_;  // sorted
    std::unordered_map<std::string, std::vector<std::string>> parents_;  // authored order
    std::unordered_map<std::string, std::vector<std::string>> children_;
    std::unordered_map<std::string, std::string> synonyms_;  // surface -> concept
    std::string root_;
    std::size_t max_surface_tokens_ = 1;

    const std::string& require(std::string_view concept_name) const;
};

}  // namespace textsan
