#include "doctest.h"

#include "khx/cube.hpp"
#include "khx/generators.hpp"
#include "khx/movie.hpp"

using namespace khx;

namespace {
Move birth(int arc) {
    Move m{MoveType::Birth};
    m.arc = arc;
    return m;
}
Move death(int arc) {
    Move m{MoveType::Death};
    m.arc = arc;
    return m;
}
Move saddle(int r, int s, int new_arc = 0) {
    Move m{MoveType::Saddle};
    m.arcs = {r, s};
    m.new_arc = new_arc;
    return m;
}
Move dot(int arc) {
    Move m{MoveType::Dot};
    m.arc = arc;
    return m;
}
Move r1plus(int arc, int sign, std::vector<int> new_arcs, bool over_first = false) {
    Move m{MoveType::R1Plus};
    m.arc = arc;
    m.sign = sign;
    m.over_first = over_first;
    m.new_arcs = std::move(new_arcs);
    return m;
}
Move r1minus(int loop) {
    Move m{MoveType::R1Minus};
    m.arc = loop;
    return m;
}
Move r2plus(int over, int under, bool same_first, int first_sign, std::vector<int> new_arcs) {
    Move m{MoveType::R2Plus};
    m.over_arc = over;
    m.under_arc = under;
    m.same_first = same_first;
    m.first_sign = first_sign;
    m.new_arcs = std::move(new_arcs);
    return m;
}
Move r3(int arc) {
    Move m{MoveType::R3};
    m.arc = arc;
    return m;
}
} // namespace

TEST_CASE("morse moves rewrite diagrams as expected") {
    Diagram u = parse_pd("O(1)");

    auto b = apply_move(u, birth(2));
    CHECK(b.result.same_labelled_diagram(parse_pd("O(1) O(2)")));
    CHECK(b.reverse.type == MoveType::Death);

    auto d = apply_move(b.result, death(2));
    CHECK(d.result.same_labelled_diagram(u));

    // merging the two circles keeps the first label
    auto m = apply_move(b.result, saddle(1, 2));
    CHECK(m.result.same_labelled_diagram(u));
    CHECK(m.reverse.type == MoveType::Saddle);
    CHECK(m.reverse.arcs[0] == 1);
    CHECK(m.reverse.new_arc == 2);

    // splitting the unknot off again restores the two circles
    auto s = apply_move(u, m.reverse);
    CHECK(s.result.same_labelled_diagram(b.result));
}

TEST_CASE("death of the basepoint circle is rejected") {
    Diagram two = parse_pd("O(1) O(2)");
    CHECK(two.basepoint() == 1);
    CHECK_THROWS_AS(apply_move(two, death(1)), Error);
    CHECK_NOTHROW(apply_move(two, death(2)));
}

TEST_CASE("saddle on trefoil arcs reconnects head occurrences") {
    Diagram t = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
    auto app = apply_move(t, saddle(2, 6));
    CHECK(app.result.crossing_count() == 3);
    CHECK(app.result.components() == 2);
    // applying the reverse saddle restores the trefoil
    auto back = apply_move(app.result, app.reverse);
    CHECK(back.result.same_labelled_diagram(t));
}

TEST_CASE("r1 moves round-trip") {
    Diagram u = parse_pd("O(1)");
    for (int sign : {1, -1})
        for (bool over_first : {false, true}) {
            auto app = apply_move(u, r1plus(1, sign, {2}, over_first));
            CHECK(app.result.crossing_count() == 1);
            CHECK(app.result.is_knot());
            CHECK(app.result.n_plus() == (sign > 0 ? 1 : 0));
            auto back = apply_move(app.result, app.reverse);
            CHECK(back.result.same_labelled_diagram(u));
        }

    // kink on a crossing arc of the trefoil
    Diagram t = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
    auto app = apply_move(t, r1plus(2, -1, {7, 8}));
    CHECK(app.result.crossing_count() == 4);
    CHECK(app.result.n_minus() == 1);
    auto back = apply_move(app.result, app.reverse);
    CHECK(back.result.same_labelled_diagram(t));
}

TEST_CASE("r2 moves round-trip") {
    // kinked unknot has two arcs to poke
    Diagram kinked = apply_move(parse_pd("O(1)"), r1plus(1, 1, {2})).result;
    for (bool same_first : {true, false})
        for (int first_sign : {1, -1}) {
            auto app =
                apply_move(kinked, r2plus(1, 2, same_first, first_sign, {3, 4, 5, 6}));
            CHECK(app.result.crossing_count() == 3);
            CHECK(app.result.is_knot());
            CHECK(app.result.n_plus() == 2); // kink + one of each from the poke
            auto back = apply_move(app.result, app.reverse);
            CHECK(back.result.same_labelled_diagram(kinked));
        }
}

TEST_CASE("r3 applies and is self-inverse") {
    // poke a kinked unknot so that the kink crossing admits a triangle
    Diagram kinked = apply_move(parse_pd("O(1)"), r1plus(1, 1, {2})).result;
    bool found = false;
    for (bool same_first : {true, false})
        for (int first_sign : {1, -1}) {
            Diagram d =
                apply_move(kinked, r2plus(1, 2, same_first, first_sign, {3, 4, 5, 6})).result;
            for (int arc : d.arcs()) {
                Move mv = r3(arc);
                MoveApplication app;
                try {
                    app = apply_move(d, mv);
                } catch (const Error&) {
                    continue;
                }
                found = true;
                CHECK(app.result.crossing_count() == 3);
                CHECK(app.result.is_knot());
                CHECK(app.result.n_plus() == d.n_plus());
                CHECK(app.result.n_minus() == d.n_minus());
                auto back = apply_move(app.result, app.reverse);
                CHECK(back.result.same_labelled_diagram(d));
            }
        }
    CHECK(found);
}

TEST_CASE("movie validation and statistics") {
    Diagram u = parse_pd("O(1)");
    Diagram uu = parse_pd("O(1) O(2)");

    SUBCASE("ribbon movie (1,1,0)") {
        Movie m = Movie::validate({u, uu, u}, {birth(2), saddle(1, 2)});
        CHECK(m.stats().births == 1);
        CHECK(m.stats().saddles == 1);
        CHECK(m.stats().deaths == 0);
        CHECK(m.stats().connected);
        CHECK(m.stats().genus == 0);
        CHECK(m.is_ribbon());
        CHECK(m.morse_canonically_ordered());
    }
    SUBCASE("tube movie (0,2,0) has genus 1") {
        Movie m = Movie::validate({u, uu, u}, {saddle(1, 1, 2), saddle(1, 2)});
        CHECK(m.stats().saddles == 2);
        CHECK(m.stats().connected);
        CHECK(m.stats().genus == 1);
        CHECK_FALSE(m.is_ribbon());
    }
    SUBCASE("birth-merge-split-death (1,2,1) has genus 0") {
        Movie m = Movie::validate({u, uu, u, uu, u},
                                  {birth(2), saddle(1, 2), saddle(1, 1, 2), death(2)});
        CHECK(m.stats().genus == 0);
        CHECK(m.stats().connected);
        CHECK(m.morse_canonically_ordered());
    }
    SUBCASE("frame mismatch is rejected") {
        CHECK_THROWS_AS(Movie::validate({u, u}, {birth(2)}), Error);
    }
    SUBCASE("endpoints must be knots") {
        CHECK_THROWS_AS(Movie::validate({uu, u}, {death(2)}), Error);
    }
}

TEST_CASE("mirror movie is an involution") {
    Diagram u = parse_pd("O(1)");
    Diagram uu = parse_pd("O(1) O(2)");
    Movie m = Movie::validate({u, uu, u, uu, u},
                              {birth(2), saddle(1, 2), saddle(1, 1, 2), death(2)});
    Movie mm = m.mirrored();
    CHECK(mm.stats().births == 1);
    CHECK(mm.stats().deaths == 1);
    Movie back = mm.mirrored();
    REQUIRE(back.frames().size() == m.frames().size());
    for (std::size_t k = 0; k < m.frames().size(); ++k)
        CHECK(back.frames()[k].same_labelled_diagram(m.frames()[k]));

    // mirror of a birth-then-merge ribbon movie is split-then-death
    Movie ribbon = Movie::validate({u, uu, u}, {birth(2), saddle(1, 2)});
    Movie rm = ribbon.mirrored();
    CHECK(rm.moves()[0].type == MoveType::Saddle);
    CHECK(rm.moves()[1].type == MoveType::Death);

    // the tube is its own mirror
    Movie tube = Movie::validate({u, uu, u}, {saddle(1, 1, 2), saddle(1, 2)});
    Movie tm = tube.mirrored();
    CHECK(tm.moves()[0].type == MoveType::Saddle);
    CHECK(tm.moves()[0].arcs == std::array<int, 2>{1, 1});
    CHECK(tm.moves()[1].arcs == std::array<int, 2>{1, 2});
}

TEST_CASE("disconnected movie detected") {
    Diagram u = parse_pd("O(1)");
    Diagram uu = parse_pd("O(1) O(2)");
    // birth then death of a separate circle: the sphere is its own patch
    Movie m = Movie::validate({u, uu, u}, {birth(2), death(2)});
    CHECK_FALSE(m.stats().connected);
}

TEST_CASE("braid closure generators") {
    Fp::set_modulus(32003);
    Diagram tref = braid_closure(2, {1, 1, 1});
    CHECK(tref.crossing_count() == 3);
    CHECK(tref.is_knot());
    CHECK(std::abs(tref.writhe()) == 3);

    Diagram fig8 = braid_closure(3, {1, -2, 1, -2});
    CHECK(fig8.crossing_count() == 4);
    CHECK(fig8.is_knot());
    CHECK(fig8.writhe() == 0);

    Diagram t34 = braid_closure(3, {1, 2, 1, 2, 1, 2, 1, 2});
    CHECK(t34.is_knot());
    CHECK(t34.crossing_count() == 8);
}

TEST_CASE("rational and pretzel generators build valid knots") {
    Diagram c3 = rational_knot({3});
    CHECK(c3.crossing_count() == 3);
    CHECK(c3.is_knot());

    Diagram c22 = rational_knot({2, 2});
    CHECK(c22.crossing_count() == 4);
    CHECK(c22.is_knot());

    Diagram p332 = pretzel({3, 3, 2});
    CHECK(p332.crossing_count() == 8);
    CHECK(p332.is_knot());

    Diagram p233 = pretzel({-2, 3, 3});
    CHECK(p233.crossing_count() == 8);
    CHECK(p233.is_knot());
}

TEST_CASE("rational diagrams have the expected determinants") {
    // alternating knots are thin: the unreduced t=0 dimension is det + 1
    Fp::set_modulus(32003);
    auto dim0 = [](const Diagram& d) {
        return specialize_dimension(Complex::build(d), Fp(0)).total;
    };
    CHECK(dim0(rational_knot({3})) == 3 + 1);       // trefoil
    CHECK(dim0(rational_knot({2, 2})) == 5 + 1);    // figure eight
    CHECK(dim0(rational_knot({3, 2})) == 7 + 1);    // 5_2
    CHECK(dim0(rational_knot({5})) == 5 + 1);       // 5_1
    CHECK(dim0(rational_knot({2, 1, 1, 2})) == 13 + 1); // 6_3
}

TEST_CASE("random knots are knots") {
    std::mt19937_64 rng(20240517);
    for (int t = 0; t < 20; ++t) {
        Diagram d = random_knot(rng, 9);
        CHECK(d.is_knot());
        CHECK(d.crossing_count() <= 9);
    }
}
