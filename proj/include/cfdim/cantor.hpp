#pragma once
// Cantor subset construction: schedules that pin down the admissible
// partial-quotient pattern (bounded blocks, a forced quotient, then a
// window range tied to the current continuant), depth-first level
// enumeration in spatial order, fundamental-interval hulls, exact gaps
// between same-order neighbors and seeded point sampling.

#include <cstdint>
#include <optional>
#include <vector>

#include "cfdim/cf.hpp"
#include "cfdim/errors.hpp"
#include "cfdim/interval.hpp"
#include "cfdim/numeric.hpp"

namespace cfdim {

// Constraint kind of a single position in the admissible pattern.
enum class PositionKind { Bounded, Forced, Window };

// Case of a fundamental interval J_n, keyed by the constraint at position
// n+1: I = bounded children, II = single forced child, III = window range.
enum class LevelCase { I, II, III };

const char* to_string(LevelCase c);

// Inclusive admissible range for the next quotient of a given prefix.
struct ChildSpec {
    Int lo, hi;
    PositionKind kind = PositionKind::Bounded;
    Int count() const { return hi - lo + 1; }
};

// Role a level plays in the mass distribution.
enum class LevelRole { BlockBoundary, WindowMinus2, WindowMinus1, Window, Intermediate };

// ---------------------------------------------------------------------------
// Power-law schedule: window positions n_k with a_{n_k - 1} = 4 and
// a_{n_k} in [q_{n_k-1}^tau / 4, q_{n_k-1}^tau / 2]; everything else in
// [1, M]. n_0 = 0 and n_{k+1} = n_k + m_{k+1} L + 2.
struct CantorSchedule {
    long M = 2;
    long L = 2;
    Rat tau = Rat(1);
    std::vector<long> window_blocks;  // m_1, m_2, ...
    std::vector<long> windows;        // n_1 < n_2 < ... (derived)

    PositionKind position_kind(long j) const;
    ChildSpec child_spec(const CFWord& prefix) const;
    // Same, from the continuant q_{j-1} alone (word-free bulk path).
    ChildSpec child_spec_at(long j, const Int& q_prefix) const;
    LevelCase level_case(long n) const;
    LevelRole level_role(long n) const;
    long last_window() const { return windows.empty() ? 0 : windows.back(); }
};

CantorSchedule make_schedule(long M, long L, const Rat& tau, std::vector<long> window_blocks);

// Window blocks m_k = 2^k, the reproducible default.
std::vector<long> default_window_blocks(std::size_t count);

// ---------------------------------------------------------------------------
// General schedule driven by a rapidly increasing sequence Q_k: window k
// opens at the first prefix length whose continuant satisfies
// q_{n_k - 2} <= Q_k^{1-delta} <= 2M q_{n_k - 2}; the forced quotient is
// round(Q_k^delta / 4) and the window range is
// [q_{n_k-1}^{tau-eps} / 2, q_{n_k-1}^{tau-eps}].
enum class BaseWordPolicy {
    Fixed,      // window indices materialized from a fixed base quotient
    Enumerated  // window indices located per branch while enumerating
};

struct GeneralSchedule {
    std::vector<Int> Q;
    Rat delta, epsilon;
    long M = 2;
    Rat tau = Rat(1);
    BaseWordPolicy policy = BaseWordPolicy::Fixed;
    long base_quotient = 1;

    // Fixed policy: materialized window positions and forced quotients.
    std::vector<long> windows;
    std::vector<Int> forced_values;

    ChildSpec child_spec(const CFWord& prefix) const;
    PositionKind position_kind(long j) const;  // Fixed policy only
    LevelCase level_case(long n) const;        // Fixed policy only
};

GeneralSchedule make_general_schedule(std::vector<Int> Q, const Rat& delta, const Rat& epsilon,
                                      long M, const Rat& tau,
                                      BaseWordPolicy policy = BaseWordPolicy::Fixed,
                                      long base_quotient = 1);

// ---------------------------------------------------------------------------
// Membership and geometry.

// True iff the word satisfies every positional constraint of the schedule.
bool is_in_Dn(const CFWord& word, const CantorSchedule& s);
bool is_in_Dn(const CFWord& word, const GeneralSchedule& s);

// Exact hull J_n of the admissible children of a D_n word. Throws
// std::invalid_argument when the word is not in D_n and ScheduleError when
// the child range is empty.
Interval fundamental_interval(const CFWord& word, const CantorSchedule& s);
Interval fundamental_interval(const CFWord& word, const GeneralSchedule& s);

struct GapReport {
    CFWord word;
    LevelCase case_tag = LevelCase::I;
    std::optional<Rat> left_gap, right_gap;  // absent when no neighbor on that side
    Rat min_gap;
    Rat paper_lower_bound;  // per-case bound, already scaled by |J_n|
    Rat ratio_to_length;    // min_gap / |J_n|
    Interval hull;
};

// Exact gaps between J_n and its same-order neighbors obtained by bumping
// the deepest non-forced quotient by one. Throws NoSiblingError when
// neither neighbor exists.
GapReport gap_exact(const CFWord& word, const CantorSchedule& s);

// ---------------------------------------------------------------------------
// Level enumeration. Words are visited in spatial (left-to-right) order;
// the visitor returns false to stop the walk.

template <class Schedule, class Fn>
bool walk_level_rec(const Schedule& s, long level, CFWord& w, Fn& fn) {
    if (static_cast<long>(w.size()) == level) return fn(static_cast<const CFWord&>(w));
    const ChildSpec spec = s.child_spec(w);
    const bool descending = w.size() % 2 == 0;
    for (Int a = descending ? spec.hi : spec.lo;; descending ? --a : ++a) {
        w.push_back(a);
        const bool keep_going = walk_level_rec(s, level, w, fn);
        w.pop_back();
        if (!keep_going) return false;
        if (a == (descending ? spec.lo : spec.hi)) break;
    }
    return true;
}

template <class Schedule, class Fn>
void walk_level(const Schedule& s, long level, Fn fn) {
    if (level < 0) throw std::invalid_argument("level must be >= 0");
    CFWord w;
    walk_level_rec(s, level, w, fn);
}

struct LevelEntry {
    CFWord word;
    Interval hull;  // fundamental interval J_n
};

struct LevelSet {
    long level = 0;
    std::vector<LevelEntry> entries;
    bool complete = true;  // false when the budget stopped the stream
};

// Materialize level n in spatial order. In exhaustive mode a count beyond
// `budget` raises BudgetError; otherwise the stream stops at the budget and
// the result is marked incomplete.
template <class Schedule>
LevelSet enumerate_level(const Schedule& s, long level, std::size_t budget, bool exhaustive) {
    LevelSet out;
    out.level = level;
    walk_level(s, level, [&](const CFWord& w) {
        if (out.entries.size() == budget) {
            if (exhaustive)
                throw BudgetError("level " + std::to_string(level) + " exceeds budget of " +
                                  std::to_string(budget) + " entries");
            out.complete = false;
            return false;
        }
        const ChildSpec spec = s.child_spec(w);
        out.entries.push_back(LevelEntry{w, children_hull(w, spec.lo, spec.hi)});
        return true;
    });
    return out;
}

// Exact size of level n (walks level n-1; `walk_budget` caps that walk).
template <class Schedule>
Int count_level(const Schedule& s, long level, std::size_t walk_budget) {
    if (level == 0) return Int(1);
    Int total = 0;
    std::size_t walked = 0;
    walk_level(s, level - 1, [&](const CFWord& w) {
        if (++walked > walk_budget)
            throw BudgetError("count_level walk exceeds budget at level " + std::to_string(level - 1));
        total += s.child_spec(w).count();
        return true;
    });
    return total;
}

// Uniformly branch-random D_depth word; deterministic under a fixed seed.
template <class Schedule>
CFWord sample_point(const Schedule& s, long depth, unsigned long seed) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    GmpRng rng(seed);
    CFWord w;
    for (long j = 1; j <= depth; ++j) {
        const ChildSpec spec = s.child_spec(w);
        if (spec.lo > spec.hi) throw ScheduleError("empty child range at position " + std::to_string(j));
        w.push_back(rng.uniform(spec.lo, spec.hi));
    }
    return w;
}

}  // namespace cfdim
