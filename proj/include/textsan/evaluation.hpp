#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "textsan/sanitizer.hpp"

namespace textsan {

// Normalized term surfaces flagged as sensitive for one document.
// File format: one term per line, `#` comments.
class AnnotationSet {
public:
    AnnotationSet() = default;
    static AnnotationSet load(const std::filesystem::path& path);
    static AnnotationSet parse(std::string_view content);

    void add(std::string_view term);
    const std::set<std::string>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

private:
    std::set<std::string> terms_;
};

struct ScoreTriple {
    double precision = 0;  // percentages in [0, 100]
    double recall = 0;
    double f_measure = 0;
    bool empty_system = false;  // S was empty; precision reported as 0
};

// Harmonic mean of two percentages; 0 when both are 0.
double f_measure(double precision_pct, double recall_pct);

// Precision/recall of the system set S against the gold set H.
// Throws ConfigError when H is empty (recall is undefined).
ScoreTriple score(const AnnotationSet& system, const AnnotationSet& gold);

struct SafetyViolation {
    std::vector<std::string> terms;
    std::string entity;
    double pmi_bits = 0;
    double threshold_bits = 0;
};

struct SafetyReport {
    bool safe = true;
    std::vector<SafetyViolation> violations;
};

// Exhaustively evaluates every subset of the surviving terms up to
// max_cardinality against every policy entry. The reference predicate the
// sanitizer is tested against; deliberately independent of the greedy path.
// Guarded: throws ConfigError when the instance is too large to enumerate
// (more than 20 terms at full cardinality).
SafetyReport oracle_safety_check(const std::vector<std::string>& surviving_terms,
                                 const ProtectionPolicy& policy, CountProvider& provider,
                                 std::size_t max_cardinality);

struct OptimalAssignment {
    GeneralizationAssignment assignment;
    double retained_bits = 0;
};

// Exhaustive search over every assignment of each term to itself, any
// element of its generalization chain, or suppression; among assignments
// whose surviving set passes the full-cardinality safety check, returns one
// maximizing the total retained information. Ties resolve to the first
// assignment in enumeration order. Feasible only for small instances
// (guarded at 8 terms).
OptimalAssignment oracle_optimal_utility(const std::vector<std::string>& terms,
                                         const ProtectionPolicy& policy, const Taxonomy& tax,
                                         CountProvider& provider);

}  // namespace textsan
