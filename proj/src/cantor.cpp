#include "cfdim/cantor.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfdim {

namespace {

constexpr long kForcedQuotient = 4;
const Rat kQuarter = Rat(1, 4);
const Rat kHalf = Rat(1, 2);

bool contains_sorted(const std::vector<long>& v, long x) {
    return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

const char* to_string(LevelCase c) {
    switch (c) {
        case LevelCase::I: return "I";
        case LevelCase::II: return "II";
        case LevelCase::III: return "III";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// CantorSchedule

CantorSchedule make_schedule(long M, long L, const Rat& tau, std::vector<long> window_blocks) {
    if (M < 2) throw std::invalid_argument("schedule requires M >= 2");
    if (L < 2) throw std::invalid_argument("schedule requires L >= 2");
    if (tau < 0) throw std::invalid_argument("schedule requires tau >= 0");
    if (window_blocks.empty()) throw std::invalid_argument("schedule requires at least one window block");
    for (std::size_t i = 0; i < window_blocks.size(); ++i) {
        if (window_blocks[i] < 1) throw std::invalid_argument("window block sizes must be >= 1");
        if (i && window_blocks[i] < window_blocks[i - 1])
            throw std::invalid_argument("window block sizes must be nondecreasing");
    }
    CantorSchedule s;
    s.M = M;
    s.L = L;
    s.tau = tau;
    s.window_blocks = std::move(window_blocks);
    long n = 0;
    for (long m : s.window_blocks) {
        n += m * L + 2;
        s.windows.push_back(n);
    }
    return s;
}

std::vector<long> default_window_blocks(std::size_t count) {
    std::vector<long> m;
    long v = 2;
    for (std::size_t i = 0; i < count; ++i, v *= 2) m.push_back(v);
    return m;
}

PositionKind CantorSchedule::position_kind(long j) const {
    if (contains_sorted(windows, j + 1)) return PositionKind::Forced;
    if (contains_sorted(windows, j)) return PositionKind::Window;
    return PositionKind::Bounded;
}

ChildSpec CantorSchedule::child_spec(const CFWord& prefix) const {
    const long j = static_cast<long>(prefix.size()) + 1;
    return child_spec_at(j, prefix.q(j - 1));
}

ChildSpec CantorSchedule::child_spec_at(long j, const Int& q_prefix) const {
    switch (position_kind(j)) {
        case PositionKind::Forced:
            return ChildSpec{Int(kForcedQuotient), Int(kForcedQuotient), PositionKind::Forced};
        case PositionKind::Window: {
            Int lo = ceil_scaled_pow(kQuarter, q_prefix, tau);
            Int hi = floor_scaled_pow(kHalf, q_prefix, tau);
            if (lo > hi)
                throw ScheduleError("empty window range at position " + std::to_string(j) +
                                    " (q = " + q_prefix.str() + ", tau = " + rat_str(tau) + ")");
            return ChildSpec{std::move(lo), std::move(hi), PositionKind::Window};
        }
        case PositionKind::Bounded:
        default:
            return ChildSpec{Int(1), Int(M), PositionKind::Bounded};
    }
}

LevelCase CantorSchedule::level_case(long n) const {
    switch (position_kind(n + 1)) {
        case PositionKind::Forced: return LevelCase::II;
        case PositionKind::Window: return LevelCase::III;
        default: return LevelCase::I;
    }
}

LevelRole CantorSchedule::level_role(long n) const {
    if (n <= 0) return LevelRole::BlockBoundary;
    if (contains_sorted(windows, n)) return LevelRole::Window;
    if (contains_sorted(windows, n + 1)) return LevelRole::WindowMinus1;
    if (contains_sorted(windows, n + 2)) return LevelRole::WindowMinus2;
    long base = 0;
    for (long w : windows)
        if (w < n) base = w;
    return (n - base) % L == 0 ? LevelRole::BlockBoundary : LevelRole::Intermediate;
}

// ---------------------------------------------------------------------------
// GeneralSchedule

namespace {

// sign of (a - Q^{1-delta}), exact.
int cmp_vs_sandwich_target(const Int& a, const Rat& coeff, const Int& Q, const Rat& one_minus_delta) {
    return cmp_int_vs_scaled_pow(a, coeff, Q, one_minus_delta);
}

}  // namespace

GeneralSchedule make_general_schedule(std::vector<Int> Q, const Rat& delta, const Rat& epsilon,
                                      long M, const Rat& tau, BaseWordPolicy policy,
                                      long base_quotient) {
    if (M < 2) throw std::invalid_argument("general schedule requires M >= 2");
    if (epsilon <= 0 || delta < 3 * epsilon)
        throw std::invalid_argument("general schedule requires delta >= 3*epsilon > 0");
    if (delta >= 1) throw std::invalid_argument("general schedule requires delta < 1");
    if (tau < epsilon) throw std::invalid_argument("general schedule requires tau >= epsilon");
    if (Q.empty()) throw std::invalid_argument("general schedule requires at least one Q_k");
    for (std::size_t i = 0; i < Q.size(); ++i) {
        if (Q[i] < 2) throw std::invalid_argument("Q_k must be >= 2");
        if (i && Q[i] <= Q[i - 1]) throw std::invalid_argument("Q_k must be strictly increasing");
    }
    if (base_quotient < 1 || base_quotient > M)
        throw std::invalid_argument("base quotient must lie in [1, M]");

    GeneralSchedule s;
    s.Q = std::move(Q);
    s.delta = delta;
    s.epsilon = epsilon;
    s.M = M;
    s.tau = tau;
    s.policy = policy;
    s.base_quotient = base_quotient;

    if (policy == BaseWordPolicy::Fixed) {
        // Grow the fixed base word until each sandwich
        // q_{n_k-2} <= Q_k^{1-delta} <= 2M q_{n_k-2} is met in turn.
        const Rat one_minus_delta = Rat(1) - delta;
        const Rat window_exp = tau - epsilon;
        CFWord w;
        std::size_t k = 0;
        const long guard = 1000000;
        while (k < s.Q.size()) {
            const long j = static_cast<long>(w.size()) + 1;  // next position
            if (j > guard) throw ScheduleError("general schedule grew past the position guard");
            if (j >= 3 &&
                cmp_vs_sandwich_target(2 * M * w.q(j - 2), Rat(1), s.Q[k], one_minus_delta) >= 0) {
                if (cmp_vs_sandwich_target(w.q(j - 2), Rat(1), s.Q[k], one_minus_delta) > 0)
                    throw ScheduleError("sandwich unsatisfiable for Q_" + std::to_string(k + 1) +
                                        " = " + s.Q[k].str());
                Int forced = round_scaled_pow(kQuarter, s.Q[k], delta);
                if (forced < 1)
                    throw ScheduleError("forced quotient rounds to zero for Q_" +
                                        std::to_string(k + 1) + " = " + s.Q[k].str());
                w.push_back(forced);
                const Int& q = w.q(j);
                Int lo = ceil_scaled_pow(kHalf, q, window_exp);
                Int hi = floor_scaled_pow(Rat(1), q, window_exp);
                if (lo > hi)
                    throw ScheduleError("empty window range at position " + std::to_string(j + 1));
                w.push_back(lo);
                s.forced_values.push_back(std::move(forced));
                s.windows.push_back(j + 1);
                ++k;
            } else {
                w.push_back(Int(base_quotient));
            }
        }
    }
    return s;
}

PositionKind GeneralSchedule::position_kind(long j) const {
    if (policy != BaseWordPolicy::Fixed)
        throw std::logic_error("position_kind requires the fixed base-word policy");
    if (contains_sorted(windows, j + 1)) return PositionKind::Forced;
    if (contains_sorted(windows, j)) return PositionKind::Window;
    return PositionKind::Bounded;
}

LevelCase GeneralSchedule::level_case(long n) const {
    switch (position_kind(n + 1)) {
        case PositionKind::Forced: return LevelCase::II;
        case PositionKind::Window: return LevelCase::III;
        default: return LevelCase::I;
    }
}

namespace {

// Kind of position `target` (1-based) of a word under the enumerated
// policy, where each window opens at the first position whose prefix
// continuant meets the sandwich for the next Q_k.
struct GenScan {
    PositionKind kind = PositionKind::Bounded;
    std::size_t window_index = 0;  // valid for Forced/Window
};

GenScan enumerated_scan(const GeneralSchedule& s, const CFWord& w, long target) {
    const Rat one_minus_delta = Rat(1) - s.delta;
    std::size_t k = 0;
    long j = 1;
    while (j <= target) {
        if (k < s.Q.size() && j >= 3 &&
            cmp_vs_sandwich_target(2 * s.M * w.q(j - 2), Rat(1), s.Q[k], one_minus_delta) >= 0) {
            if (cmp_vs_sandwich_target(w.q(j - 2), Rat(1), s.Q[k], one_minus_delta) > 0)
                throw ScheduleError("sandwich unsatisfiable for Q_" + std::to_string(k + 1) +
                                    " = " + s.Q[k].str());
            if (j == target) return {PositionKind::Forced, k};
            if (j + 1 == target) return {PositionKind::Window, k};
            j += 2;
            ++k;
            continue;
        }
        if (j == target) return {PositionKind::Bounded, 0};
        ++j;
    }
    return {PositionKind::Bounded, 0};
}

}  // namespace

ChildSpec GeneralSchedule::child_spec(const CFWord& prefix) const {
    const long j = static_cast<long>(prefix.size()) + 1;
    PositionKind kind;
    std::size_t k = 0;
    if (policy == BaseWordPolicy::Fixed) {
        kind = position_kind(j);
        if (kind != PositionKind::Bounded) {
            const long key = kind == PositionKind::Forced ? j + 1 : j;
            k = static_cast<std::size_t>(
                std::lower_bound(windows.begin(), windows.end(), key) - windows.begin());
        }
    } else {
        const GenScan scan = enumerated_scan(*this, prefix, j);
        kind = scan.kind;
        k = scan.window_index;
    }
    switch (kind) {
        case PositionKind::Forced: {
            Int forced = policy == BaseWordPolicy::Fixed ? forced_values[k]
                                                         : round_scaled_pow(kQuarter, Q[k], delta);
            if (forced < 1)
                throw ScheduleError("forced quotient rounds to zero for Q_" + std::to_string(k + 1));
            return ChildSpec{forced, forced, PositionKind::Forced};
        }
        case PositionKind::Window: {
            const Int& q = prefix.q(j - 1);
            const Rat window_exp = tau - epsilon;
            Int lo = ceil_scaled_pow(kHalf, q, window_exp);
            Int hi = floor_scaled_pow(Rat(1), q, window_exp);
            if (lo > hi)
                throw ScheduleError("empty window range at position " + std::to_string(j));
            return ChildSpec{std::move(lo), std::move(hi), PositionKind::Window};
        }
        case PositionKind::Bounded:
        default:
            return ChildSpec{Int(1), Int(M), PositionKind::Bounded};
    }
}

// ---------------------------------------------------------------------------
// Membership

bool is_in_Dn(const CFWord& word, const CantorSchedule& s) {
    for (long j = 1; j <= static_cast<long>(word.size()); ++j) {
        const Int& a = word.a(static_cast<std::size_t>(j));
        switch (s.position_kind(j)) {
            case PositionKind::Forced:
                if (a != kForcedQuotient) return false;
                break;
            case PositionKind::Window: {
                const Int& q = word.q(j - 1);
                if (cmp_int_vs_scaled_pow(a, kQuarter, q, s.tau) < 0) return false;
                if (cmp_int_vs_scaled_pow(a, kHalf, q, s.tau) > 0) return false;
                break;
            }
            case PositionKind::Bounded:
                if (a < 1 || a > s.M) return false;
                break;
        }
    }
    return true;
}

bool is_in_Dn(const CFWord& word, const GeneralSchedule& s) {
    CFWord prefix;
    for (long j = 1; j <= static_cast<long>(word.size()); ++j) {
        const ChildSpec spec = s.child_spec(prefix);
        const Int& a = word.a(static_cast<std::size_t>(j));
        if (a < spec.lo || a > spec.hi) return false;
        prefix.push_back(a);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Fundamental intervals and gaps

namespace {

template <class Schedule>
Interval fundamental_interval_impl(const CFWord& word, const Schedule& s) {
    if (!is_in_Dn(word, s)) throw std::invalid_argument("word " + word.str() + " is not in D_n");
    const ChildSpec spec = s.child_spec(word);
    return children_hull(word, spec.lo, spec.hi);
}

}  // namespace

Interval fundamental_interval(const CFWord& word, const CantorSchedule& s) {
    return fundamental_interval_impl(word, s);
}

Interval fundamental_interval(const CFWord& word, const GeneralSchedule& s) {
    return fundamental_interval_impl(word, s);
}

GapReport gap_exact(const CFWord& word, const CantorSchedule& s) {
    const long n = static_cast<long>(word.size());
    if (n < 1) throw std::invalid_argument("gap_exact requires a nonempty word");
    if (!is_in_Dn(word, s)) throw std::invalid_argument("word " + word.str() + " is not in D_n");

    GapReport r;
    r.word = word;
    r.case_tag = s.level_case(n);
    r.hull = fundamental_interval(word, s);

    // The deepest position whose quotient may vary: position n, unless it is
    // forced, in which case position n-1 (its own kind is always Bounded or
    // Window, never Forced, because window patterns do not abut).
    const long vp = s.position_kind(n) == PositionKind::Forced ? n - 1 : n;
    if (vp < 1) throw NoSiblingError("no variable position in word " + word.str());

    CFWord prefix;
    for (long j = 1; j < vp; ++j) prefix.push_back(word.a(static_cast<std::size_t>(j)));
    const ChildSpec spec = s.child_spec(prefix);
    const Int b = word.a(static_cast<std::size_t>(vp));

    auto sibling_hull = [&](const Int& value) -> std::optional<Interval> {
        if (value < spec.lo || value > spec.hi) return std::nullopt;
        CFWord sib = prefix;
        sib.push_back(value);
        for (long j = vp + 1; j <= n; ++j) sib.push_back(word.a(static_cast<std::size_t>(j)));
        return fundamental_interval(sib, s);
    };

    for (const Int& value : {Int(b - 1), Int(b + 1)}) {
        const auto hull = sibling_hull(value);
        if (!hull) continue;
        Rat gap = closed_gap(r.hull, *hull);
        if (hull->left >= r.hull.right)
            r.right_gap = std::move(gap);
        else
            r.left_gap = std::move(gap);
    }

    if (!r.left_gap && !r.right_gap)
        throw NoSiblingError("word " + word.str() + " has no same-order neighbor");
    if (r.left_gap && r.right_gap)
        r.min_gap = std::min(*r.left_gap, *r.right_gap);
    else
        r.min_gap = r.left_gap ? *r.left_gap : *r.right_gap;

    const Rat len = r.hull.length();
    switch (r.case_tag) {
        case LevelCase::I: r.paper_lower_bound = len / (2 * s.M); break;
        case LevelCase::II: r.paper_lower_bound = Rat(4, 3) * len; break;
        case LevelCase::III: r.paper_lower_bound = len / 3; break;
    }
    r.ratio_to_length = r.min_gap / len;
    return r;
}

}  // namespace cfdim
