#include "cfdim/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfdim {

Interval cylinder_interval(const CFWord& word) {
    const long n = static_cast<long>(word.size());
    if (n == 0) return Interval::make(Rat(0), Rat(1), true, false);
    return cylinder_interval_raw(word.p(n), word.q(n), word.p(n - 1), word.q(n - 1), n);
}

Cylinder cylinder(const CFWord& word) {
    if (word.empty()) throw std::invalid_argument("cylinder of the empty word");
    return Cylinder{word, cylinder_interval(word)};
}

std::vector<Cylinder> child_layout(const CFWord& word, const Int& lo, const Int& hi) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("child range must be nonempty and positive");
    std::vector<Cylinder> out;
    const bool descending = word.size() % 2 == 0;  // even order: position falls as a grows
    CFWord w = word;
    for (Int a = descending ? hi : lo;; descending ? --a : ++a) {
        w.push_back(a);
        out.push_back(cylinder(w));
        w.pop_back();
        if (a == (descending ? lo : hi)) break;
    }
    return out;
}

Interval children_hull(const CFWord& word, const Int& lo, const Int& hi) {
    const long n = static_cast<long>(word.size());
    return children_hull_raw(word.p(n), word.q(n), word.p(n - 1), word.q(n - 1), n, lo, hi);
}

Interval children_hull_raw(const Int& p, const Int& q, const Int& p_prev, const Int& q_prev,
                           long /*order*/, const Int& lo, const Int& hi) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("child range must be nonempty and positive");
    // The union spans between F(lo) (attained, closed) and F(hi+1) (open),
    // where F(t) = (t p + p_prev)/(t q + q_prev).
    Rat closed_end = make_rat(lo * p + p_prev, lo * q + q_prev);
    Rat open_end = make_rat((hi + 1) * p + p_prev, (hi + 1) * q + q_prev);
    if (closed_end < open_end) return Interval::make(std::move(closed_end), std::move(open_end), true, false);
    return Interval::make(std::move(open_end), std::move(closed_end), false, true);
}

Interval cylinder_interval_raw(const Int& p, const Int& q, const Int& p_prev, const Int& q_prev,
                               long order) {
    const Rat value = make_rat(p, q);
    Rat mediant = make_rat(p + p_prev, q + q_prev);
    if (order % 2 == 0) return Interval::make(value, std::move(mediant), true, false);
    return Interval::make(std::move(mediant), value, false, true);
}

Rat closed_gap(const Interval& a, const Interval& b) {
    if (a.is_empty || b.is_empty) throw std::invalid_argument("gap against empty interval");
    if (b.left >= a.right) return b.left - a.right;
    return a.left - b.right;
}

bool closure_contains(const Interval& outer, const Interval& inner) {
    if (inner.is_empty) return true;
    if (outer.is_empty) return false;
    return outer.left <= inner.left && inner.right <= outer.right;
}

}  // namespace cfdim
