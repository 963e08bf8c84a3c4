#include <catch2/catch_amalgamated.hpp>

#include <nimhoff/set_spec.hpp>

#include <random>

#include "helpers.hpp"

using namespace nimhoff;

TEST_CASE("short set forms parse", "[setspec]") {
    CHECK(parse_set_spec("all") == SubtractionSet::all());
    CHECK(parse_set_spec("finite:1,2,3") == SubtractionSet::finite({1, 2, 3}));
    CHECK(parse_set_spec("allbut:4,8") == SubtractionSet::all_but({4, 8}));
    CHECK(parse_set_spec("finite:") == SubtractionSet::finite({}));
}

TEST_CASE("ranges expand inclusively", "[setspec]") {
    CHECK(parse_set_spec("finite:1..7") ==
          SubtractionSet::finite({1, 2, 3, 4, 5, 6, 7}));
    CHECK(parse_set_spec("finite:1..3,7") == SubtractionSet::finite({1, 2, 3, 7}));
    CHECK(parse_set_spec("finite:5..5") == SubtractionSet::finite({5}));
}

TEST_CASE("lift forms apply the stair construction", "[setspec]") {
    CHECK(parse_set_spec("lift(h=4, allbut:1,2)") == SubtractionSet::all_but({4, 8}));
    CHECK(parse_set_spec("lift(h=1, finite:1,2)") == SubtractionSet::finite({1, 2}));
    CHECK(parse_set_spec("lift(h=2, lift(h=2, all))") == SubtractionSet::all());
}

TEST_CASE("periodic forms parse", "[setspec]") {
    const auto s = parse_set_spec("periodic(t=3, prefix=1,2, p=2, r=1)");
    CHECK(s == lift_set(SubtractionSet::finite({1}), 2));
}

TEST_CASE("whitespace is insignificant", "[setspec]") {
    CHECK(parse_set_spec("  lift( h = 4 ,  allbut: 1 , 2 )  ") ==
          SubtractionSet::all_but({4, 8}));
    CHECK(parse_set_spec(" finite : 1 .. 3 ") == SubtractionSet::finite({1, 2, 3}));
}

TEST_CASE("parse errors carry a position", "[setspec]") {
    CHECK_THROWS_AS(parse_set_spec("bogus"), ParseError);
    CHECK_THROWS_AS(parse_set_spec("all extra"), ParseError);
    CHECK_THROWS_AS(parse_set_spec("finite:1,,2"), ParseError);
    CHECK_THROWS_AS(parse_set_spec("lift(h=2 all)"), ParseError);
    CHECK_THROWS_AS(parse_set_spec(""), ParseError);
    try {
        parse_set_spec("allbut:4,8 x");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 11);
    }
}

TEST_CASE("numeric overflow is a parse error", "[setspec]") {
    CHECK_THROWS_AS(parse_set_spec("finite:99999999999999999999999"), ParseError);
}

TEST_CASE("descending ranges are rejected", "[setspec]") {
    CHECK_THROWS_AS(parse_set_spec("finite:5..3"), ParseError);
}

TEST_CASE("rendering uses the shortest matching form", "[setspec]") {
    CHECK(render_set_spec(SubtractionSet::all()) == "all");
    CHECK(render_set_spec(SubtractionSet::finite({1, 2, 3, 4, 5, 6, 7})) == "finite:1..7");
    CHECK(render_set_spec(SubtractionSet::finite({1, 2})) == "finite:1,2");
    CHECK(render_set_spec(SubtractionSet::all_but({4, 8})) == "allbut:4,8");
    CHECK(render_set_spec(lift_set(SubtractionSet::finite({1}), 2)) ==
          "periodic(t=3, prefix=1,2, p=2, r=1)");
}

TEST_CASE("parse after render is the identity on canonical sets", "[setspec]") {
    std::mt19937 rng(20260809);
    for (int i = 0; i < 400; ++i) {
        const SubtractionSet s = test_helpers::random_set(rng);
        CHECK(parse_set_spec(render_set_spec(s)) == s);
    }
}

TEST_CASE("game descriptions parse and round-trip", "[setspec]") {
    const GcnSpec spec = parse_game_spec("gcn: h=4; sets=[all; finite:1..7; allbut:4,8]");
    CHECK(spec.h == 4);
    REQUIRE(spec.heap_count() == 3);
    CHECK(spec.sets[0] == SubtractionSet::all());
    CHECK(spec.sets[1] == SubtractionSet::finite({1, 2, 3, 4, 5, 6, 7}));
    CHECK(spec.sets[2] == SubtractionSet::all_but({4, 8}));
    CHECK(render_game_spec(spec) == "gcn: h=4; sets=[all; finite:1..7; allbut:4,8]");
    CHECK(parse_game_spec(render_game_spec(spec)) == spec);
}

TEST_CASE("malformed game descriptions are rejected", "[setspec]") {
    CHECK_THROWS_AS(parse_game_spec("gcn: h=4; sets=[]"), ParseError);
    CHECK_THROWS_AS(parse_game_spec("gcn: h=4"), ParseError);
    CHECK_THROWS_AS(parse_game_spec("gcn: h=4; sets=[all] tail"), ParseError);
    CHECK_THROWS_AS(parse_game_spec("nim: h=1; sets=[all]"), ParseError);
}
