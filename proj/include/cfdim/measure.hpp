#pragma once
// Mass distribution on the Cantor levels: block-boundary masses come from
// the pressure-equation weights of each length-L block, the forced level
// inherits its parent's mass, the window level splits uniformly over the
// admissible children, and in-between levels are defined by descendant
// summation so mass is conserved exactly.

#include <cstdint>
#include <vector>

#include "cfdim/cantor.hpp"
#include "cfdim/numeric.hpp"
#include "cfdim/pressure.hpp"

namespace cfdim {

struct MeasureNode {
    std::int64_t parent = -1;
    long level = 0;
    Int a;             // last quotient (meaningless at the root)
    Int p, q;          // convergents of the word at this node
    Int p_prev, q_prev;
    Rat j_left, j_right;  // closed hull of the fundamental interval J_n
    Real mass;
    LevelRole role = LevelRole::Intermediate;

    Rat j_length() const { return j_right - j_left; }
};

struct MeasureTree {
    CantorSchedule schedule;
    PressureSolution solution;
    long max_level = 0;  // deepest materialized level; always a defined level
    bool paper_divisor = false;
    std::vector<MeasureNode> nodes;  // level by level, spatial order within each level
    std::vector<std::pair<std::size_t, std::size_t>> level_ranges;  // [begin, end) per level

    const MeasureNode& node(std::size_t i) const { return nodes[i]; }
    std::pair<std::size_t, std::size_t> level_range(long level) const;
    CFWord word_of(std::size_t i) const;
};

// Materialize the measure down to max_level (rounded up to the next level
// whose mass has a direct definition, so every node carries a mass).
// `paper_divisor` switches the window split from the exact admissible-child
// count to the q^tau/4 divisor used in the source estimates.
MeasureTree assign_measure(const CantorSchedule& schedule, const PressureSolution& solution,
                           long max_level, bool paper_divisor = false,
                           std::size_t node_budget = 5'000'000);

struct NormalizationReport {
    long level = 0;
    Real total;           // sum of masses across the level
    Real max_parent_gap;  // max |mu(parent) - sum of children| over parents
    double total_tol = 1e-9;
    double parent_tol = 1e-12;
    bool total_ok = false;
    bool parents_ok = false;
    bool ok() const { return total_ok && parents_ok; }
};

NormalizationReport normalization_audit(const MeasureTree& tree, long level,
                                        double total_tol = 1e-9, double parent_tol = 1e-12);

}  // namespace cfdim
