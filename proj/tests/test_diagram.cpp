#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "khmin/diagram.hpp"

using namespace khmin;

TEST_CASE("parse_pd accepts well-formed codes") {
    PlanarDiagram tref = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
    CHECK(tref.n_crossings() == 3);
    CHECK(tref.arcs().size() == 6);
    CHECK(tref.components() == 1);
    CHECK(tref.basepoint() == 1);

    PlanarDiagram u = parse_pd("U");
    CHECK(u.n_crossings() == 0);
    CHECK(u.components() == 1);
    CHECK(u.basepoint() == u.free_loops().front());

    PlanarDiagram based = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3] base=4");
    CHECK(based.basepoint() == 4);
}

TEST_CASE("parse_pd reports broken codes") {
    CHECK_THROWS_AS(parse_pd("X[1,4,2,3] X[3,6,4,5]"), ValidationError);
    CHECK_THROWS_WITH(parse_pd("X[1,4,2,3] X[3,6,4,5]"), Catch::Matchers::ContainsSubstring("exactly twice"));
    CHECK_THROWS_AS(parse_pd("X[1,4,2"), ParseError);
    CHECK_THROWS_AS(parse_pd("Y[1,2,3,4]"), ParseError);
    CHECK_THROWS_AS(parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3] base=9"), ValidationError);
    CHECK_THROWS_AS(parse_pd(""), ParseError);
}

TEST_CASE("braid terms in PD input") {
    PlanarDiagram d = parse_pd("B[2; 1,1,1]");
    CHECK(d.n_crossings() == 3);
    CHECK(d.components() == 1);
    CHECK(d.writhe() == 3);
    PlanarDiagram du = parse_pd("B[2; 1,1,1] U U");
    CHECK(du.components() == 3);
    CHECK(du.free_loops().size() == 2);
}

TEST_CASE("torus braids") {
    BraidWord t23 = torus_braid(2, 3);
    CHECK(t23.strands == 2);
    CHECK(t23.letters == std::vector<int>{1, 1, 1});

    BraidWord t45 = torus_braid(4, 5);
    CHECK(t45.strands == 4);
    CHECK(t45.letters.size() == 15);
    CHECK(t45.closure_components() == 1);  // gcd(4,5) = 1

    CHECK(torus_braid(4, 6).closure_components() == 2);
    CHECK_THROWS_AS(torus_braid(1, 5), ValidationError);
    CHECK_THROWS_AS(torus_braid(4, 1), ValidationError);
}

TEST_CASE("braid closures") {
    PlanarDiagram tref = braid_closure(BraidWord(2, {1, 1, 1}));
    CHECK(tref.n_crossings() == 3);
    CHECK(tref.components() == 1);
    CHECK(tref.writhe() == 3);
    CHECK(tref.n_plus() == 3);

    PlanarDiagram unlink = braid_closure(BraidWord(3, {}));
    CHECK(unlink.n_crossings() == 0);
    CHECK(unlink.components() == 3);
    CHECK(unlink.free_loops().size() == 3);

    PlanarDiagram t45 = braid_closure(torus_braid(4, 5));
    CHECK(t45.n_crossings() == 15);
    CHECK(t45.components() == 1);
    CHECK(t45.writhe() == 15);

    PlanarDiagram fig8 = braid_closure(BraidWord(3, {1, -2, 1, -2}));
    CHECK(fig8.components() == 1);
    CHECK(fig8.n_plus() == 2);
    CHECK(fig8.n_minus() == 2);
}

TEST_CASE("mirror") {
    PlanarDiagram u = parse_pd("U");
    CHECK(mirror(u) == u);

    PlanarDiagram t45 = braid_closure(torus_braid(4, 5));
    CHECK(mirror(t45).writhe() == -15);
    CHECK(mirror(mirror(t45)) == t45);

    PlanarDiagram fig8 = braid_closure(BraidWord(3, {1, -2, 1, -2}));
    CHECK(mirror(mirror(fig8)) == fig8);
    CHECK(mirror(fig8).n_plus() == 2);
}

TEST_CASE("component count of a closure equals the cycle count of the word") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        const int strands = std::uniform_int_distribution<int>(2, 5)(rng);
        const int len = std::uniform_int_distribution<int>(0, 10)(rng);
        std::vector<int> letters;
        for (int k = 0; k < len; ++k) {
            int g = std::uniform_int_distribution<int>(1, strands - 1)(rng);
            letters.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? g : -g);
        }
        BraidWord w(strands, letters);
        PlanarDiagram d = braid_closure(w);
        CHECK(d.components() == w.closure_components());
        // every arc of a valid diagram occurs exactly twice; the constructor
        // validates, so reaching this point is itself the check
        CHECK(d.arcs().size() == 2 * d.crossings().size() + d.free_loops().size());
    }
}

TEST_CASE("mirror is an involution on random closures") {
    std::mt19937 rng(5151);
    for (int trial = 0; trial < 20; ++trial) {
        const int strands = std::uniform_int_distribution<int>(2, 4)(rng);
        const int len = std::uniform_int_distribution<int>(1, 8)(rng);
        std::vector<int> letters;
        for (int k = 0; k < len; ++k) {
            int g = std::uniform_int_distribution<int>(1, strands - 1)(rng);
            letters.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? g : -g);
        }
        PlanarDiagram d = braid_closure(BraidWord(strands, letters));
        CHECK(mirror(mirror(d)) == d);
        CHECK(mirror(d).n_plus() == d.n_minus());
    }
}
