#include <catch2/catch_amalgamated.hpp>

#include "coverbench/exact.hpp"
#include "coverbench/generators.hpp"
#include "coverbench/instances.hpp"
#include "coverbench/io.hpp"
#include "oracles.hpp"

using namespace coverbench;

namespace {

// The running three-set example: A={1,2} cost 1, B={3,4} cost 1,
// C={1,2,3,4} cost 5/2 over universe {0..3} shifted to ids {1..4}-1.
SetCoverInstance abc_instance() {
    SetCoverInstance sc;
    sc.universe_size = 4;
    sc.sets.push_back({Rational(1), {0, 1}});
    sc.sets.push_back({Rational(1), {2, 3}});
    sc.sets.push_back({Rational(5, 2), {0, 1, 2, 3}});
    return sc;
}

}  // namespace

TEST_CASE("validate flags an uncoverable element") {
    SetCoverInstance sc;
    sc.universe_size = 5;
    sc.sets.push_back({Rational(1), {0, 1, 2}});
    sc.sets.push_back({Rational(2), {4}});
    auto rep = validate(sc);  // element 3 is in no set
    CHECK(!rep.pass);
    CHECK(rep.has("coverability"));
}

TEST_CASE("validate flags an unreachable terminal") {
    DstInstance d = make_dst(4, {{0, 1, Rational(1)}, {2, 3, Rational(1)}}, 0, {1, 3});
    auto rep = validate(d);
    CHECK(!rep.pass);
    CHECK(rep.has("reachability"));
}

TEST_CASE("well-formed bi-regular label cover passes validation") {
    auto lc = gen_label_cover({.a_count = 3, .b_count = 2, .b_degree = 3, .sigma_a = 2,
                               .sigma_b = 2},
                              7);
    CHECK(validate(lc).pass);
}

TEST_CASE("validate names exactly the mutated invariant") {
    SetCoverInstance sc = abc_instance();
    CHECK(validate(sc).pass);

    SECTION("negative cost") {
        sc.sets[0].cost = Rational(-1);
        CHECK(validate(sc).has("negative-cost"));
    }
    SECTION("unsorted members") {
        sc.sets[0].members = {1, 0};
        CHECK(validate(sc).has("members-sorted"));
    }
    SECTION("member out of range") {
        sc.sets[0].members = {0, 9};
        CHECK(validate(sc).has("member-range"));
    }

    DstInstance d = make_dst(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}}, 0, {2});
    CHECK(validate(d).pass);
    SECTION("self loop") {
        d.arcs.push_back({1, 1, Rational(1)});
        CHECK(validate(d).has("self-loop"));
    }
    SECTION("parallel arcs") {
        d.arcs.push_back({0, 1, Rational(3)});
        CHECK(validate(d).has("parallel-arcs"));
    }
    SECTION("root out of range") {
        d.root = 9;
        CHECK(validate(d).has("root-range"));
    }

    auto lc = gen_label_cover({.a_count = 2, .b_count = 2, .b_degree = 2, .sigma_a = 2,
                               .sigma_b = 3},
                              5);
    CHECK(validate(lc).pass);
    SECTION("projection arity") {
        lc.projections[0].pop_back();
        CHECK(validate(lc).has("projection-arity"));
    }
    SECTION("projection symbol range") {
        lc.projections[0][0] = 99;
        CHECK(validate(lc).has("projection-range"));
    }
    SECTION("slot collision") {
        lc.edges[1].b_slot = lc.edges[0].b_slot;
        lc.edges[1].b = lc.edges[0].b;
        auto rep = validate(lc);
        CHECK(!rep.pass);
    }
}

TEST_CASE("leafify moves the terminal role to a fresh zero-cost leaf") {
    // terminal 1 has out-degree 2
    DstInstance d = make_dst(
        4, {{0, 1, Rational(2)}, {1, 2, Rational(1)}, {1, 3, Rational(1)}}, 0, {1, 3});
    DstInstance out = leafify(d);
    CHECK(out.vertex_count == 5);
    CHECK(is_leafified(out));
    bool found = false;
    for (const auto& a : out.arcs)
        if (a.tail == 1 && a.head == 4) {
            found = true;
            CHECK(a.cost == Rational(0));
        }
    CHECK(found);
    CHECK(out.terminals == std::vector<int>{3, 4});
}

TEST_CASE("leafify leaves all-leaf instances untouched and is idempotent") {
    DstInstance d = make_dst(3, {{0, 1, Rational(1)}, {0, 2, Rational(2)}}, 0, {1, 2});
    DstInstance once = leafify(d);
    CHECK(once.vertex_count == d.vertex_count);
    CHECK(emit_dst(once) == emit_dst(d));
    DstInstance nonleaf = make_dst(3, {{0, 1, Rational(1)}, {1, 2, Rational(2)}}, 0, {1, 2});
    CHECK(emit_dst(leafify(leafify(nonleaf))) == emit_dst(leafify(nonleaf)));
}

TEST_CASE("leafify preserves the optimal cost (brute-force audit)") {
    for (uint64_t seed = 1; seed <= 50; ++seed) {
        auto d = gen_dst({.vertices = 6, .extra_arcs = 4, .terminals = 3, .max_cost = 7}, seed);
        auto before = brute_force_dst(d);
        auto after = brute_force_dst(leafify(d));
        CAPTURE(seed);
        CHECK(before.cost == after.cost);
    }
}

TEST_CASE("set_cover_as_dst: single set") {
    SetCoverInstance sc;
    sc.universe_size = 2;
    sc.sets.push_back({Rational(3), {0, 1}});
    DstInstance d = set_cover_as_dst(sc);
    CHECK(d.vertex_count == 4);  // 1 + M + N
    CHECK(brute_force_dst(d).cost == Rational(3));
}

TEST_CASE("set_cover_as_dst: the three-set example has OPT 2") {
    DstInstance d = set_cover_as_dst(abc_instance());
    CHECK(d.vertex_count == 1 + 3 + 4);
    CHECK(brute_force_dst(d).cost == Rational(2));
}

TEST_CASE("set_cover_as_dst output is acyclic with 1 + M + N vertices") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        auto sc = gen_set_cover({.universe = 6, .sets = 4}, seed);
        DstInstance d = set_cover_as_dst(sc);
        CHECK(d.vertex_count == 1 + (int)sc.sets.size() + sc.universe_size);
        // acyclic: arcs only go root -> set layer -> element layer
        for (const auto& a : d.arcs) CHECK(a.tail < a.head);
        CHECK(validate(d).pass);
    }
}

TEST_CASE("encoding fidelity: OPT_DST equals OPT_SC on random instances") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        auto sc = gen_set_cover({.universe = 5, .sets = 4, .max_set_size = 3}, seed);
        auto opt_sc = brute_force_set_cover(sc);
        auto oracle = oracles::mask_scan_set_cover(sc);
        REQUIRE(oracle.has_value());
        CHECK(opt_sc.cost == *oracle);
        DstInstance d = set_cover_as_dst(sc);
        if (d.arcs.size() <= 20) {
            auto opt_dst = brute_force_dst(d);
            CAPTURE(seed);
            CHECK(opt_dst.cost == opt_sc.cost);
        }
    }
}

TEST_CASE("cover and arborescence validators accept good and reject bad certificates") {
    SetCoverInstance sc = abc_instance();
    CoverSolution good{{0, 1}, Rational(2)};
    CHECK(validate_cover(sc, good).pass);
    CoverSolution incomplete{{0}, Rational(1)};
    CHECK(validate_cover(sc, incomplete).has("cover-complete"));
    CoverSolution wrong_cost{{0, 1}, Rational(3)};
    CHECK(validate_cover(sc, wrong_cost).has("cost-sum"));

    DstInstance d = make_dst(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}}, 0, {2});
    ArborescenceSolution sol{{{0, 1, Rational(1)}, {1, 2, Rational(1)}}, Rational(2)};
    CHECK(validate_arborescence(d, sol).pass);
    ArborescenceSolution missing{{{0, 1, Rational(1)}}, Rational(1)};
    CHECK(validate_arborescence(d, missing).has("terminal-covered"));
    ArborescenceSolution foreign{{{0, 2, Rational(1)}, {1, 2, Rational(1)}}, Rational(2)};
    CHECK(!validate_arborescence(d, foreign).pass);
}
