#pragma once
// Exact geometry of basic cylinders: endpoints, lengths, child ordering and
// hulls of consecutive-child unions. Endpoint open/closed flags follow the
// parity convention for cylinder orientation.

#include <vector>

#include "cfdim/cf.hpp"
#include "cfdim/numeric.hpp"

namespace cfdim {

struct Interval {
    Rat left, right;
    bool left_closed = true;
    bool right_closed = false;
    bool is_empty = false;

    Rat length() const { return is_empty ? Rat(0) : Rat(right - left); }

    static Interval make(Rat l, Rat r, bool lc, bool rc) {
        return Interval{std::move(l), std::move(r), lc, rc, false};
    }
    static Interval empty() {
        Interval e;
        e.is_empty = true;
        return e;
    }
};

struct Cylinder {
    CFWord word;
    Interval interval;
};

// Exact interval of the basic cylinder of the word: endpoints p_n/q_n and
// (p_n + p_{n-1})/(q_n + q_{n-1}), oriented by the parity of n. The empty
// word yields [0, 1).
Interval cylinder_interval(const CFWord& word);

Cylinder cylinder(const CFWord& word);

// Children I_{n+1}(word, a) for a in [lo, hi], sorted by position
// (left to right); increasing a runs left-to-right when the parent order is
// odd and right-to-left when it is even.
std::vector<Cylinder> child_layout(const CFWord& word, const Int& lo, const Int& hi);

// Hull of the union of the consecutive children a in [lo, hi]. The union is
// itself an interval: adjacent child cylinders share their touching endpoint.
Interval children_hull(const CFWord& word, const Int& lo, const Int& hi);

// Same hull from raw convergent data of the parent word (word-free bulk
// path); `order` is the parent word length, fixing the orientation.
Interval children_hull_raw(const Int& p, const Int& q, const Int& p_prev, const Int& q_prev,
                           long order, const Int& lo, const Int& hi);

// Cylinder interval from raw convergent data.
Interval cylinder_interval_raw(const Int& p, const Int& q, const Int& p_prev, const Int& q_prev,
                               long order);

// Distance between the closures of two disjoint intervals (negative if the
// closures overlap; the caller decides whether that is an error).
Rat closed_gap(const Interval& a, const Interval& b);

// Closure containment.
bool closure_contains(const Interval& outer, const Interval& inner);

}  // namespace cfdim
