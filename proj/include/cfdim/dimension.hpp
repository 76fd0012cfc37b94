#pragma once
// Empirical dimension machinery: Hoelder-exponent audits of the measure on
// fundamental intervals and on balls, a mass-distribution lower-bound fit,
// and a box-counting estimator over nested level covers.

#include <cstddef>
#include <vector>

#include "cfdim/cantor.hpp"
#include "cfdim/measure.hpp"
#include "cfdim/numeric.hpp"

namespace cfdim {

struct RegressionResult {
    double slope = 0;
    double intercept = 0;
    double rms_residual = 0;
    std::size_t points = 0;
};

// Least-squares line through (x, y); throws when fewer than 2 distinct
// abscissae are given.
RegressionResult linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Generic sorted covers (also the substrate for control measures in tests).

struct CoverCell {
    Rat left, right;
    double mass = 0;
};

// Mass of the open ball (center - radius, center + radius) against a
// sorted disjoint cover; every intersected cell contributes its full mass.
double cover_ball_mass(const std::vector<CoverCell>& cells, const Rat& center, const Rat& radius);

// Cells of one measure-tree level, in spatial order.
std::vector<CoverCell> level_cover(const MeasureTree& tree, long level);

// ---------------------------------------------------------------------------
// Hoelder audits.

struct HolderIntervalAudit {
    long level_lo = 0, level_hi = 0;
    double exponent_target = 0;  // S - 10/L
    double fitted_slope = 0;     // pooled log-mass vs log-length
    double max_ratio = 0;        // max mass / length^target
    std::size_t sample_size = 0;
    double margin = 0.05;
    bool meets_target = false;
    std::vector<std::pair<long, double>> per_level_slopes;
    std::vector<std::pair<double, double>> points;  // (log length, log mass)
};

HolderIntervalAudit holder_audit_intervals(const MeasureTree& tree, long level_lo, long level_hi,
                                           double margin = 0.05);

struct BallRegimeStats {
    LevelCase tag = LevelCase::I;
    std::size_t samples = 0;
    double max_ratio = 0;        // max mass(B)/r^target
    double fitted_slope = 0;     // log mass(B) vs log r
    double rms_residual = 0;
    // Window regime only: most order-n_k basic intervals an admissible
    // small ball (r <= |I_{n_k}|) intersected.
    std::size_t max_small_ball_cylinders = 0;
};

struct HolderBallAudit {
    double exponent_target = 0;
    std::size_t centers = 0;
    std::size_t sample_size = 0;
    std::size_t skipped = 0;  // center/level pairs without a usable radius bracket
    double pooled_slope = 0;
    std::vector<BallRegimeStats> regimes;
    std::vector<std::pair<double, double>> points;  // (log r, log mass)
};

// Balls centered in the deepest cover with radii spanning the per-level gap
// regimes [g_{n+1}, g_n); deterministic under a fixed seed.
HolderBallAudit holder_audit_balls(const MeasureTree& tree, std::size_t centers,
                                   unsigned long seed);

// ---------------------------------------------------------------------------
// Dimension estimates.

struct BoxLevel {
    long level = 0;
    Int count;
    double mean_length = 0;
};

struct DimensionEstimate {
    enum class Method { BoxCount, MdpFit } method = Method::BoxCount;
    double value = 0;  // clamped to [0, 1]
    double raw = 0;
    double residual = 0;
    std::vector<long> levels_used;
};

// Count and mean fundamental-interval length of one level, streamed.
template <class Schedule>
BoxLevel box_level(const Schedule& s, long level, std::size_t walk_budget) {
    BoxLevel out;
    out.level = level;
    out.count = 0;
    long double len_sum = 0;
    std::size_t walked = 0;
    walk_level(s, level, [&](const CFWord& w) {
        if (++walked > walk_budget)
            throw BudgetError("box_level walk exceeds budget at level " + std::to_string(level));
        const ChildSpec spec = s.child_spec(w);
        const long n = static_cast<long>(w.size());
        const Int d1 = spec.lo * w.q(n) + w.q(n - 1);
        const Int d2 = (spec.hi + 1) * w.q(n) + w.q(n - 1);
        len_sum += spec.count().convert_to<long double>() /
                   (d1.convert_to<long double>() * d2.convert_to<long double>());
        ++out.count;
        return true;
    });
    if (out.count == 0) throw std::domain_error("empty level in box_level");
    out.mean_length = static_cast<double>(len_sum / out.count.convert_to<long double>());
    return out;
}

// Regression of log(count) against -log(mean length); needs >= 3 levels
// with strictly decreasing mesh. The slope is clamped to [0, 1].
DimensionEstimate box_count(const std::vector<BoxLevel>& levels);

// Empirical lower-bound proxy: the smallest fitted ball exponent over the
// audited regimes with at least `min_samples` samples.
DimensionEstimate mdp_lower_bound(const HolderBallAudit& balls, std::size_t min_samples = 3);

}  // namespace cfdim
