#include "cfdim/measure.hpp"

#include <map>
#include <stdexcept>

#include "cfdim/errors.hpp"
#include "cfdim/interval.hpp"

namespace cfdim {

std::pair<std::size_t, std::size_t> MeasureTree::level_range(long level) const {
    if (level < 0 || level > max_level) throw std::out_of_range("level outside the materialized tree");
    return level_ranges[static_cast<std::size_t>(level)];
}

CFWord MeasureTree::word_of(std::size_t i) const {
    std::vector<Int> rev;
    for (std::int64_t cur = static_cast<std::int64_t>(i); cur > 0; cur = nodes[static_cast<std::size_t>(cur)].parent)
        rev.push_back(nodes[static_cast<std::size_t>(cur)].a);
    std::vector<Int> fwd(rev.rbegin(), rev.rend());
    return CFWord(std::move(fwd));
}

namespace {

// Continuant of the last `len` quotients ending at node `i`.
Int block_continuant(const std::vector<MeasureNode>& nodes, std::size_t i, long len) {
    std::vector<Int> block;
    std::int64_t cur = static_cast<std::int64_t>(i);
    for (long k = 0; k < len; ++k) {
        block.push_back(nodes[static_cast<std::size_t>(cur)].a);
        cur = nodes[static_cast<std::size_t>(cur)].parent;
    }
    Int q_prev(0), q_cur(1);
    for (auto it = block.rbegin(); it != block.rend(); ++it) {
        Int next = (*it) * q_cur + q_prev;
        q_prev = q_cur;
        q_cur = next;
    }
    return q_cur;
}

std::size_t ancestor_up(const std::vector<MeasureNode>& nodes, std::size_t i, long steps) {
    std::int64_t cur = static_cast<std::int64_t>(i);
    for (long k = 0; k < steps; ++k) cur = nodes[static_cast<std::size_t>(cur)].parent;
    return static_cast<std::size_t>(cur);
}

}  // namespace

MeasureTree assign_measure(const CantorSchedule& schedule, const PressureSolution& solution,
                           long max_level, bool paper_divisor, std::size_t node_budget) {
    if (solution.L != schedule.L || solution.M != schedule.M || solution.tau != schedule.tau)
        throw std::invalid_argument("pressure solution was solved for a different (L, M, tau)");
    if (max_level < 1) throw std::invalid_argument("max_level must be >= 1");

    MeasureTree tree;
    tree.schedule = schedule;
    tree.solution = solution;
    tree.paper_divisor = paper_divisor;
    while (schedule.level_role(max_level) == LevelRole::Intermediate) ++max_level;
    tree.max_level = max_level;

    const Real weight_exponent = -(Real(2) + Real(schedule.tau)) * solution.S;
    std::map<Int, Real> block_weight;  // q_L(block) -> (1/q^(2+tau))^S
    auto weight_of = [&](const Int& q_block) -> const Real& {
        auto it = block_weight.find(q_block);
        if (it == block_weight.end())
            it = block_weight.emplace(q_block, exp(weight_exponent * log(Real(q_block)))).first;
        return it->second;
    };

    // Root: J_0 is the hull of the level-1 cylinders, mass 1.
    MeasureNode root;
    root.parent = -1;
    root.level = 0;
    root.a = 0;
    root.p = 0;
    root.q = 1;
    root.p_prev = 1;
    root.q_prev = 0;
    const ChildSpec root_spec = schedule.child_spec_at(1, root.q);
    const Interval root_hull = children_hull_raw(root.p, root.q, root.p_prev, root.q_prev, 0,
                                                 root_spec.lo, root_spec.hi);
    root.j_left = root_hull.left;
    root.j_right = root_hull.right;
    root.mass = 1;
    root.role = LevelRole::BlockBoundary;
    tree.nodes.push_back(std::move(root));
    tree.level_ranges.emplace_back(0, 1);

    // Top-down, level by level; children are emitted in spatial order so
    // every level range is spatially sorted.
    for (long n = 1; n <= max_level; ++n) {
        const auto [pb, pe] = tree.level_ranges.back();
        const std::size_t begin = tree.nodes.size();
        const LevelRole role = schedule.level_role(n);
        for (std::size_t pi = pb; pi < pe; ++pi) {
            const ChildSpec spec = schedule.child_spec_at(n, tree.nodes[pi].q);
            const bool descending = (n - 1) % 2 == 0;
            for (Int av = descending ? spec.hi : spec.lo;; descending ? --av : ++av) {
                if (tree.nodes.size() >= node_budget)
                    throw BudgetError("measure tree exceeds the node budget at level " +
                                      std::to_string(n));
                MeasureNode child;
                child.parent = static_cast<std::int64_t>(pi);
                child.level = n;
                child.a = av;
                child.p = av * tree.nodes[pi].p + tree.nodes[pi].p_prev;
                child.q = av * tree.nodes[pi].q + tree.nodes[pi].q_prev;
                child.p_prev = tree.nodes[pi].p;
                child.q_prev = tree.nodes[pi].q;
                child.role = role;
                const ChildSpec cs = schedule.child_spec_at(n + 1, child.q);
                const Interval hull = children_hull_raw(child.p, child.q, child.p_prev,
                                                        child.q_prev, n, cs.lo, cs.hi);
                child.j_left = hull.left;
                child.j_right = hull.right;
                tree.nodes.push_back(std::move(child));
                if (av == (descending ? spec.lo : spec.hi)) break;
            }
        }
        tree.level_ranges.emplace_back(begin, tree.nodes.size());

        // Masses with a direct definition.
        const auto [cb, ce] = tree.level_ranges.back();
        for (std::size_t ci = cb; ci < ce; ++ci) {
            MeasureNode& node = tree.nodes[ci];
            switch (role) {
                case LevelRole::BlockBoundary:
                case LevelRole::WindowMinus2: {
                    const std::size_t anc = ancestor_up(tree.nodes, ci, schedule.L);
                    node.mass = tree.nodes[anc].mass *
                                weight_of(block_continuant(tree.nodes, ci, schedule.L));
                    break;
                }
                case LevelRole::WindowMinus1:
                    node.mass = tree.nodes[static_cast<std::size_t>(node.parent)].mass;
                    break;
                case LevelRole::Window: {
                    const MeasureNode& parent = tree.nodes[static_cast<std::size_t>(node.parent)];
                    if (paper_divisor) {
                        const Real divisor =
                            pow(Real(parent.q), Real(schedule.tau)) / Real(4);
                        node.mass = parent.mass / divisor;
                    } else {
                        const ChildSpec ws = schedule.child_spec_at(n, parent.q);
                        node.mass = parent.mass / Real(ws.count());
                    }
                    break;
                }
                case LevelRole::Intermediate:
                    node.mass = 0;  // filled by the bottom-up pass
                    break;
            }
        }
    }

    // Bottom-up: intermediate masses are the sums of their children.
    for (long n = max_level; n >= 1; --n) {
        const auto [cb, ce] = tree.level_ranges[static_cast<std::size_t>(n)];
        for (std::size_t ci = cb; ci < ce; ++ci) {
            MeasureNode& parent = tree.nodes[static_cast<std::size_t>(tree.nodes[ci].parent)];
            if (parent.role == LevelRole::Intermediate) parent.mass += tree.nodes[ci].mass;
        }
    }
    return tree;
}

NormalizationReport normalization_audit(const MeasureTree& tree, long level, double total_tol,
                                        double parent_tol) {
    NormalizationReport report;
    report.level = level;
    report.total_tol = total_tol;
    report.parent_tol = parent_tol;

    const auto [cb, ce] = tree.level_range(level);
    Real total(0), carry(0);
    for (std::size_t i = cb; i < ce; ++i) {
        const Real y = tree.nodes[i].mass - carry;
        const Real t = total + y;
        carry = (t - total) - y;
        total = t;
    }
    report.total = total;
    report.total_ok = abs(total - Real(1)) <= Real(total_tol);

    report.max_parent_gap = 0;
    if (level >= 1) {
        const auto [pb, pe] = tree.level_range(level - 1);
        std::vector<Real> child_sum(pe - pb, Real(0));
        for (std::size_t i = cb; i < ce; ++i)
            child_sum[static_cast<std::size_t>(tree.nodes[i].parent) - pb] += tree.nodes[i].mass;
        for (std::size_t pi = pb; pi < pe; ++pi) {
            const Real gap = abs(tree.nodes[pi].mass - child_sum[pi - pb]);
            if (gap > report.max_parent_gap) report.max_parent_gap = gap;
        }
    }
    report.parents_ok = report.max_parent_gap <= Real(parent_tol);
    return report;
}

}  // namespace cfdim
