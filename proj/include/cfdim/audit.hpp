#pragma once
// Streaming geometry audits over Cantor levels: same-order disjointness,
// nesting in the mother interval, per-case length brackets, and exact
// adjacent gaps checked against the per-case lower bounds. Violations are
// collected as findings, never silently dropped.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfdim/cantor.hpp"
#include "cfdim/numeric.hpp"

namespace cfdim {

struct GeometryFinding {
    long level = 0;
    std::string word;
    std::string kind;  // "disjoint", "nesting", "length-bracket", "gap-bound"
    std::string detail;
};

struct GeometryAuditReport {
    long max_level = 0;
    unsigned long words_checked = 0;
    std::vector<GeometryFinding> findings;
    // Empirical minimum of gap/|J| seen per case (the reported slack).
    std::map<LevelCase, Rat> min_gap_ratio;
    std::vector<long> skipped_levels;  // levels past the walk budget

    bool ok() const { return findings.empty(); }
};

// Audits levels 1..max_level of the schedule. `inject_gap_fault` flips the
// first gap comparison; it exists so the finding path itself is testable.
GeometryAuditReport audit_geometry(const CantorSchedule& s, long max_level,
                                   std::size_t level_budget, bool inject_gap_fault = false);

}  // namespace cfdim
