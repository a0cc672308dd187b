#include "doctest.h"

#include "khx/diagram.hpp"

using namespace khx;

namespace {
const char* kTrefoil = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
const char* kFigureEight = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
} // namespace

TEST_CASE("parse_pd basics") {
    Diagram t = parse_pd(kTrefoil);
    CHECK(t.crossing_count() == 3);
    CHECK(t.arc_count() == 6);
    CHECK(t.is_knot());
    CHECK(t.basepoint() == 1);

    Diagram u = parse_pd("O(1)");
    CHECK(u.crossing_count() == 0);
    CHECK(u.arc_count() == 1);
    CHECK(u.is_knot());

    Diagram kink = parse_pd("X(1,1,2,2)");
    CHECK(kink.crossing_count() == 1);
    CHECK(kink.is_knot());
    CHECK(kink.arc_count() == 2);
}

TEST_CASE("parse_pd errors") {
    CHECK_THROWS_AS(parse_pd(""), Error);
    CHECK_THROWS_AS(parse_pd("X(1,2,3)"), Error);
    CHECK_THROWS_AS(parse_pd("Y(1,2,3,4)"), Error);
    CHECK_THROWS_AS(parse_pd("X(1,4,2,5)"), Error); // arcs appear once
    CHECK_THROWS_AS(parse_pd("X(1,1,1,1)"), Error); // arc appears four times
}

TEST_CASE("crossing signs") {
    Diagram t = parse_pd(kTrefoil);
    auto [np, nm] = crossing_signs(t);
    CHECK(np == 3);
    CHECK(nm == 0);

    Diagram m = t.mirrored();
    auto [np2, nm2] = crossing_signs(m);
    CHECK(np2 == 0);
    CHECK(nm2 == 3);

    Diagram u = parse_pd("O(1)");
    CHECK(crossing_signs(u) == std::pair<int, int>(0, 0));

    Diagram f8 = parse_pd(kFigureEight);
    auto [np3, nm3] = crossing_signs(f8);
    CHECK(np3 == 2);
    CHECK(nm3 == 2);
}

TEST_CASE("mirror is an involution") {
    for (const char* pd : {kTrefoil, kFigureEight, "X(1,1,2,2)"}) {
        Diagram d = parse_pd(pd);
        CHECK(d.mirrored().mirrored().same_labelled_diagram(d));
    }
}

TEST_CASE("resolve_state circle counts") {
    Diagram u = parse_pd("O(1)");
    CHECK(u.resolve(State{0, 0}).circle_count == 1);

    Diagram t = parse_pd(kTrefoil);
    CHECK(t.resolve(State{0b000, 3}).circle_count == 2);
    CHECK(t.resolve(State{0b111, 3}).circle_count == 3);

    // flipping one bit changes the circle count by exactly one
    for (std::uint32_t s = 0; s < 8; ++s) {
        int c0 = t.resolve(State{s, 3}).circle_count;
        for (int k = 0; k < 3; ++k) {
            int c1 = t.resolve(State{s ^ (1u << k), 3}).circle_count;
            CHECK(std::abs(c0 - c1) == 1);
        }
    }
}

TEST_CASE("resolution circles cover all arcs") {
    Diagram f8 = parse_pd(kFigureEight);
    for (std::uint32_t s = 0; s < 16; ++s) {
        CircleSet cs = f8.resolve(State{s, 4});
        CHECK(cs.arc_to_circle.size() == 8);
        CHECK(cs.circle_count >= 1);
    }
}

TEST_CASE("canonical form and render round-trip") {
    Diagram t = parse_pd(kTrefoil);
    Diagram c = t.canonical();
    std::string text = c.render();
    Diagram back = parse_pd(text);
    CHECK(back.same_labelled_diagram(c));
    CHECK(back.canonical().render() == text); // idempotent

    // canonical of the figure-eight as well
    Diagram f8 = parse_pd(kFigureEight).canonical();
    CHECK(parse_pd(f8.render()).same_labelled_diagram(f8));
}

TEST_CASE("strand traversal") {
    Diagram t = parse_pd(kTrefoil);
    auto arcs = t.component_arcs(1);
    CHECK(arcs.size() == 6);
    // sequential PD labels follow the strand
    CHECK(arcs == std::vector<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("planarity detection") {
    CHECK(parse_pd(kTrefoil).planar());
    CHECK(parse_pd(kFigureEight).planar());
    CHECK(parse_pd("X(1,1,2,2)").planar());
    CHECK(parse_pd("O(1)").planar());
    // virtual curl: the under strand closes through the over strand's loop,
    // impossible in the plane (one face, Euler count 0)
    Diagram vt = Diagram({{{1, 2, 1, 2}}}, {}, 0);
    CHECK_FALSE(vt.planar());
}
