#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "textsan/corpus.hpp"
#include "textsan/measures.hpp"
#include "textsan/taxonomy.hpp"
#include "textsan/textproc.hpp"

namespace textsan {

// One protected entity, optionally with the generalization whose IC caps the
// disclosure allowed for it. Without a generalization the entity's own IC is
// the cap.
struct PolicyEntry {
    std::string entity;
    std::optional<std::string> generalization;
};

// Ordered protection policy. File format: one entry per line, either
// `entity<TAB>generalization` or `entity` alone; `#` comments. Order is
// significant: entities are evaluated in authored order.
struct ProtectionPolicy {
    std::vector<PolicyEntry> entries;
    bool contextualize = false;  // requires a generalization on every entry

    static ProtectionPolicy load(const std::filesystem::path& path, bool contextualize = false);
    static ProtectionPolicy parse(std::string_view content, std::string_view origin,
                                  bool contextualize = false);

    // Structural checks; with a taxonomy also verifies that each stated
    // generalization is a hypernym of its entity (when both resolve).
    void validate(const Taxonomy* tax = nullptr) const;
};

struct SanitizerConfig {
    int max_cardinality = 1;  // MAX: largest term group analyzed
    ContextMode context_mode = ContextMode::WholeDocument;
    std::size_t window_tokens = 0;
    std::string suppression_marker = "[REDACTED]";
    ExtractionOptions extraction;
};

// Disclosure cap in bits: IC of the entry's generalization, or of the entity
// itself for plain entries.
double entry_threshold(const PolicyEntry& entry, CountProvider& provider);

struct RiskEvidence {
    bool risky = false;
    double pmi_bits = 0;
    double threshold_bits = 0;
};

// A term group is risky for an entry iff its PMI with the entity strictly
// exceeds the entry's threshold; equality is safe.
RiskEvidence is_risky(const std::vector<std::string>& member_phrases, const PolicyEntry& entry,
                      bool contextualize, CountProvider& provider);

// Replacement choice for a risky group, keyed by member phrase. nullopt
// means suppression. Unchanged members map to themselves.
using GeneralizationAssignment = std::map<std::string, std::optional<std::string>>;

GeneralizationAssignment select_generalizations(const std::vector<std::string>& member_phrases,
                                                const ProtectionPolicy& policy,
                                                const Taxonomy& tax, CountProvider& provider);

struct ReplacementRecord {
    int context_id = 0;
    std::vector<std::string> originals;     // member phrases at decision time
    std::vector<std::string> replacements;  // aligned; suppressed members show the marker
    int cardinality = 0;
    std::string entity;      // entry that flagged the group
    double pmi_bits = 0;     // measured at decision time
    double threshold_bits = 0;
};

struct ResidualRiskRecord {
    int context_id = 0;
    std::vector<std::string> member_phrases;
    std::vector<std::string> suppressed;
    std::string entity;
};

struct SanitizationReport {
    std::vector<ReplacementRecord> replacements;
    std::vector<ResidualRiskRecord> residual_risk_flags;
};

struct SanitizeResult {
    std::string text;
    SanitizationReport report;
};

// Full greedy pass over the document: contexts are processed independently;
// within a context combinations are evaluated by ascending cardinality over
// terms sorted by descending IC, mapped through the current replacement
// table, until no combination triggers a rewrite. Deterministic given a
// frozen provider.
SanitizeResult sanitize_document(std::string_view text, const ProtectionPolicy& policy,
                                 const SanitizerConfig& config, const Taxonomy& tax,
                                 CountProvider& provider, const StopwordList& stopwords);

}  // namespace textsan
