#include <doctest.h>

#include "cfdim/cantor.hpp"
#include "cfdim/cf.hpp"
#include "cfdim/errors.hpp"
#include "cfdim/interval.hpp"

using namespace cfdim;

TEST_CASE("cylinder examples") {
    auto c = cylinder(CFWord{1});
    CHECK(c.interval.left == parse_rat("1/2"));
    CHECK(c.interval.right == Rat(1));
    CHECK_FALSE(c.interval.left_closed);
    CHECK(c.interval.right_closed);
    CHECK(c.interval.length() == parse_rat("1/2"));

    c = cylinder(CFWord{2});
    CHECK(c.interval.left == parse_rat("1/3"));
    CHECK(c.interval.right == parse_rat("1/2"));
    CHECK(c.interval.length() == parse_rat("1/6"));

    c = cylinder(CFWord{1, 1});
    CHECK(c.interval.left == parse_rat("1/2"));
    CHECK(c.interval.right == parse_rat("2/3"));
    CHECK(c.interval.left_closed);
    CHECK_FALSE(c.interval.right_closed);
    CHECK(c.interval.length() == parse_rat("1/6"));

    CHECK_THROWS_AS(cylinder(CFWord{}), std::invalid_argument);
}

TEST_CASE("cylinder length formula and bracket, exhaustively") {
    CFWord w;
    auto rec = [&](auto&& self) -> void {
        if (!w.empty()) {
            const long n = static_cast<long>(w.size());
            const Rat len = cylinder_interval(w).length();
            CHECK(len == Rat(1) / Rat(w.q(n) * (w.q(n) + w.q(n - 1))));
            CHECK(len * 2 * w.q(n) * w.q(n) >= 1);
            CHECK(len * w.q(n) * w.q(n) <= 1);
        }
        if (w.size() == 5) return;
        for (long a = 1; a <= 4; ++a) {
            w.push_back(Int(a));
            self(self);
            w.pop_back();
        }
    };
    rec(rec);
}

TEST_CASE("child_layout ordering") {
    // Root children: position falls as a grows.
    auto kids = child_layout(CFWord{}, Int(1), Int(3));
    REQUIRE(kids.size() == 3);
    CHECK(kids[0].word == CFWord{3});
    CHECK(kids[2].word == CFWord{1});
    CHECK(kids[0].interval.right <= kids[1].interval.left);
    CHECK(kids[1].interval.right <= kids[2].interval.left);

    // Odd-order parent: left to right as a grows.
    kids = child_layout(CFWord{1}, Int(1), Int(2));
    REQUIRE(kids.size() == 2);
    CHECK(kids[0].word == CFWord{1, 1});
    CHECK(kids[0].interval.left == parse_rat("1/2"));
    CHECK(kids[0].interval.right == parse_rat("2/3"));
    CHECK(kids[1].interval.left == parse_rat("2/3"));
    CHECK(kids[1].interval.right == parse_rat("3/4"));

    // Singleton range.
    kids = child_layout(CFWord{2, 1}, Int(5), Int(5));
    REQUIRE(kids.size() == 1);
    CHECK(kids[0].word == CFWord{2, 1, 5});

    CHECK_THROWS_AS(child_layout(CFWord{}, Int(2), Int(1)), std::invalid_argument);
    CHECK_THROWS_AS(child_layout(CFWord{}, Int(0), Int(3)), std::invalid_argument);
}

TEST_CASE("children_hull glues consecutive cylinders") {
    // The hull equals the union: adjacent children share their endpoint, so
    // the hull endpoints come from the extreme children.
    for (const long parity_word : {0L, 1L}) {
        CFWord w;
        if (parity_word) w.push_back(Int(3));
        const auto kids = child_layout(w, Int(2), Int(5));
        const Interval hull = children_hull(w, Int(2), Int(5));
        CHECK(hull.left == kids.front().interval.left);
        CHECK(hull.right == kids.back().interval.right);
        // Each child is inside the hull and consecutive children touch.
        Rat total(0);
        for (std::size_t i = 0; i < kids.size(); ++i) {
            CHECK(closure_contains(hull, kids[i].interval));
            total += kids[i].interval.length();
            if (i) CHECK(kids[i - 1].interval.right == kids[i].interval.left);
        }
        CHECK(total == hull.length());
    }
}

TEST_CASE("fundamental interval lengths per case") {
    // M = 2, tau = 1, window at n_1 = 4.
    const CantorSchedule s = make_schedule(2, 2, Rat(1), {1});

    // Case I at n = 1: |J| = M/((q+q')((M+1)q+q')).
    const CFWord w1{1};
    const Interval j1 = fundamental_interval(w1, s);
    CHECK(j1.length() == Rat(2) / Rat((1 + 1) * (3 * 1 + 1)));
    CHECK(s.level_case(1) == LevelCase::I);

    // Case II at n = 2: single forced child a = 4.
    const CFWord w2{1, 1};
    const Interval j2 = fundamental_interval(w2, s);
    const Int q2 = w2.q(2), q1 = w2.q(1);
    CHECK(j2.length() == Rat(1) / Rat((4 * q2 + q1) * (5 * q2 + q1)));
    CHECK(s.level_case(2) == LevelCase::II);
    CHECK(j2.length() * 60 * q2 * q2 >= 1);
    CHECK(j2.length() * 16 * q2 * q2 <= 1);

    // Case III at n = 3: window children [ceil(q/4), floor(q/2)].
    const CFWord w3{1, 1, 4};
    const Interval j3 = fundamental_interval(w3, s);
    CHECK(s.level_case(3) == LevelCase::III);
    // q_3 = 9: children {3, 4}; |J| = 2/((3*9+2)(5*9+2)).
    CHECK(w3.q(3) == 9);
    CHECK(j3.length() == Rat(2) / Rat(29 * 47));
    // tau = 1 bracket: 1/((3/2) q^3) <= |J| <= 4/q^3.
    CHECK(j3.length() * Rat(3, 2) * ipow(w3.q(3), 3) >= 1);
    CHECK(j3.length() * Rat(1, 4) * ipow(w3.q(3), 3) <= 1);

    CHECK_THROWS_AS(fundamental_interval(CFWord{1, 1, 3}, s), std::invalid_argument);
}

TEST_CASE("gap_exact examples") {
    const CantorSchedule s = make_schedule(2, 2, Rat(1), {1});

    // Case II word (1,1): left sibling absent (a_2 = 1), right gap exact.
    const GapReport g = gap_exact(CFWord{1, 1}, s);
    CHECK(g.case_tag == LevelCase::II);
    CHECK_FALSE(g.left_gap.has_value());
    REQUIRE(g.right_gap.has_value());
    CHECK(g.min_gap == *g.right_gap);
    CHECK(g.min_gap == parse_rat("19/144"));
    CHECK(g.min_gap >= g.paper_lower_bound);
    CHECK(g.ratio_to_length >= parse_rat("4/3"));

    // Case I: both siblings where the quotient is interior.
    const CantorSchedule s5 = make_schedule(5, 2, Rat(1), {2});
    const GapReport gi = gap_exact(CFWord{3}, s5);
    CHECK(gi.case_tag == LevelCase::I);
    CHECK(gi.left_gap.has_value());
    CHECK(gi.right_gap.has_value());
    CHECK(gi.min_gap >= gi.paper_lower_bound);

    // Case III word: the forced position cannot vary, so the sibling comes
    // from the deepest free position.
    const GapReport giii = gap_exact(CFWord{1, 2, 4}, s);
    CHECK(giii.case_tag == LevelCase::III);
    CHECK(giii.min_gap >= giii.paper_lower_bound);

    // A single forced word with no variable sibling on either side: M = 2 at
    // the first level has both neighbors only for interior quotients; level-1
    // word (1) has only the (2) sibling.
    const GapReport g1 = gap_exact(CFWord{1}, s);
    CHECK((g1.left_gap.has_value() || g1.right_gap.has_value()));
}

TEST_CASE("gap formulas match the exact sibling computation") {
    // Case I sibling gaps: right gap 1/((q+q')((M+1)(q+q')+q')) and left gap
    // 1/(q((M+1)q+q')) for even order.
    const CantorSchedule s = make_schedule(4, 2, Rat(1), {2});
    const CFWord w{2, 3};
    const long n = 2;
    const Int q = w.q(n), qp = w.q(n - 1);
    const GapReport g = gap_exact(w, s);
    REQUIRE(g.left_gap.has_value());
    REQUIRE(g.right_gap.has_value());
    const Int M(4);
    CHECK(*g.right_gap == Rat(1) / Rat((q + qp) * ((M + 1) * (q + qp) + qp)));
    CHECK(*g.left_gap == Rat(1) / Rat(q * ((M + 1) * q + qp)));
    CHECK(g.min_gap == *g.right_gap);
    CHECK(g.min_gap >= g.hull.length() / (2 * M));
}

TEST_CASE("closed_gap and closure_contains") {
    const Interval a = Interval::make(Rat(0), Rat(1, 2), true, false);
    const Interval b = Interval::make(Rat(3, 4), Rat(1), false, true);
    CHECK(closed_gap(a, b) == Rat(1, 4));
    CHECK(closed_gap(b, a) == Rat(1, 4));
    CHECK(closure_contains(Interval::make(Rat(0), Rat(1), true, false), a));
    CHECK_FALSE(closure_contains(a, b));
    CHECK_THROWS_AS(closed_gap(a, Interval::empty()), std::invalid_argument);
}
