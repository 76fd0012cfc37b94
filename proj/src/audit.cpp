#include "cfdim/audit.hpp"

#include <algorithm>

#include "cfdim/interval.hpp"

namespace cfdim {

namespace {

struct PendingWord {
    std::string word_str;
    Rat left, right, len;
    LevelCase tag;
    std::optional<Rat> left_gap;
};

Rat gap_bound_factor(LevelCase tag, long M) {
    switch (tag) {
        case LevelCase::I: return Rat(1, 2 * M);
        case LevelCase::II: return Rat(4, 3);
        case LevelCase::III: return Rat(1, 3);
    }
    return Rat(0);
}

}  // namespace

GeometryAuditReport audit_geometry(const CantorSchedule& s, long max_level,
                                   std::size_t level_budget, bool inject_gap_fault) {
    GeometryAuditReport report;
    report.max_level = max_level;
    const Rat two_plus_tau = Rat(2) + s.tau;
    const Rat two_plus_2tau = Rat(2) + 2 * s.tau;
    bool fault_pending = inject_gap_fault;

    for (long n = 1; n <= max_level; ++n) {
        std::vector<GeometryFinding> level_findings;
        std::map<LevelCase, Rat> level_ratios;
        std::optional<PendingWord> pending;
        std::size_t streamed = 0;
        bool budget_hit = false;
        const LevelCase tag = s.level_case(n);

        // Siblings arrive consecutively; their mother hull is computed once.
        std::vector<Int> cached_prefix;
        Interval cached_mother;
        bool have_mother = false;
        auto mother_hull = [&](const CFWord& w) -> const Interval& {
            const auto& qs = w.quotients();
            const bool hit = have_mother && cached_prefix.size() == qs.size() - 1 &&
                             std::equal(cached_prefix.begin(), cached_prefix.end(), qs.begin());
            if (!hit) {
                cached_prefix.assign(qs.begin(), qs.end() - 1);
                CFWord parent(cached_prefix);
                const ChildSpec pspec = s.child_spec(parent);
                cached_mother = children_hull(parent, pspec.lo, pspec.hi);
                have_mother = true;
            }
            return cached_mother;
        };

        auto finalize = [&](const PendingWord& w, const std::optional<Rat>& right_gap) {
            std::optional<Rat> min_gap;
            if (w.left_gap && right_gap)
                min_gap = std::min(*w.left_gap, *right_gap);
            else if (w.left_gap)
                min_gap = *w.left_gap;
            else if (right_gap)
                min_gap = *right_gap;
            if (!min_gap) return;  // single word on the level
            const Rat bound = gap_bound_factor(w.tag, s.M) * w.len;
            bool violates = *min_gap < bound;
            if (fault_pending) {
                violates = !violates;
                fault_pending = false;
            }
            if (violates)
                level_findings.push_back({n, w.word_str, "gap-bound",
                                          "min gap " + rat_str(*min_gap) + " < bound " +
                                              rat_str(bound)});
            const Rat ratio = *min_gap / w.len;
            auto it = level_ratios.find(w.tag);
            if (it == level_ratios.end() || ratio < it->second) level_ratios[w.tag] = ratio;
        };

        walk_level(s, n, [&](const CFWord& w) {
            if (++streamed > level_budget) {
                budget_hit = true;
                return false;
            }
            const ChildSpec spec = s.child_spec(w);
            const Interval J = children_hull(w, spec.lo, spec.hi);
            const Rat len = J.length();
            const Int& qn = w.q(n);

            // Containment: J_n inside its own cylinder and inside J_{n-1}.
            if (!closure_contains(cylinder_interval(w), J))
                level_findings.push_back({n, w.str(), "nesting", "J_n escapes its cylinder"});
            if (!closure_contains(mother_hull(w), J))
                level_findings.push_back({n, w.str(), "nesting", "J_n escapes its mother"});

            // Per-case length bracket.
            const Rat inv_len = Rat(1) / len;
            bool bracket_ok = true;
            switch (tag) {
                case LevelCase::I:
                    bracket_ok = len * 6 * qn * qn >= 1 && len * qn * qn <= 1;
                    break;
                case LevelCase::II:
                    bracket_ok = len * 60 * qn * qn >= 1 && len * 16 * qn * qn <= 1;
                    break;
                case LevelCase::III:
                    bracket_ok =
                        cmp_rat_vs_scaled_pow(inv_len, Rat(3, 2), qn, two_plus_tau) <= 0 &&
                        cmp_rat_vs_scaled_pow(inv_len, Rat(1, 4), qn, two_plus_tau) >= 0;
                    break;
            }
            if (!bracket_ok)
                level_findings.push_back(
                    {n, w.str(), "length-bracket", "|J_n| = " + rat_str(len) + " outside its case bracket"});
            // Sharper bracket at the window levels in terms of q_{n-1}.
            if (s.level_role(n) == LevelRole::Window) {
                const Int& qprev = w.q(n - 1);
                if (cmp_rat_vs_scaled_pow(inv_len, Rat(3, 2), qprev, two_plus_2tau) > 0 ||
                    cmp_rat_vs_scaled_pow(inv_len, Rat(1, 16), qprev, two_plus_2tau) < 0)
                    level_findings.push_back({n, w.str(), "length-bracket",
                                              "|J_n| outside the window bracket in q_{n-1}"});
            }

            // Adjacency: disjointness and gap accounting.
            if (pending) {
                if (!(pending->right < J.left))
                    level_findings.push_back(
                        {n, w.str(), "disjoint", "overlaps its left neighbor " + pending->word_str});
                const Rat gap = J.left - pending->right;
                finalize(*pending, gap);
                pending = PendingWord{w.str(), J.left, J.right, len, tag, gap};
            } else {
                pending = PendingWord{w.str(), J.left, J.right, len, tag, std::nullopt};
            }
            return true;
        });

        if (budget_hit) {
            report.skipped_levels.push_back(n);
            continue;
        }
        if (pending) finalize(*pending, std::nullopt);
        report.words_checked += streamed;
        for (auto& f : level_findings) report.findings.push_back(std::move(f));
        for (const auto& [k, v] : level_ratios) {
            auto it = report.min_gap_ratio.find(k);
            if (it == report.min_gap_ratio.end() || v < it->second) report.min_gap_ratio[k] = v;
        }
    }
    return report;
}

}  // namespace cfdim
