#include <catch2/catch_amalgamated.hpp>

#include "coverbench/dst_core.hpp"
#include "coverbench/generators.hpp"
#include "oracles.hpp"

using namespace coverbench;

namespace {

SetCoverInstance abc_instance() {
    SetCoverInstance sc;
    sc.universe_size = 4;
    sc.sets.push_back({Rational(1), {0, 1}});
    sc.sets.push_back({Rational(1), {2, 3}});
    sc.sets.push_back({Rational(5, 2), {0, 1, 2, 3}});
    return sc;
}

// Independent min-density oracle: enumerate every (Y, s) pair and compute the
// tree cost with a fresh Dreyfus-Wagner run.
std::optional<Rational> density_oracle(const DstInstance& d, const std::vector<int>& roots,
                                       const std::vector<int>& uncovered, int phi) {
    std::optional<Rational> best;
    int k = (int)uncovered.size();
    for (uint32_t mask = 1; mask < (1u << k); ++mask) {
        if (__builtin_popcount(mask) > phi) continue;
        std::vector<int> subset;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) subset.push_back(uncovered[i]);
        for (int s : roots) {
            try {
                Rational c = dreyfus_wagner_directed(d, s, subset).cost;
                Rational density = c / Rational((int64_t)subset.size());
                if (!best || density < *best) best = density;
            } catch (const Error&) {
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("phi-core: star root is a core when every child subtree is small") {
    // root with 4 terminal leaves, phi = 2
    DstInstance d = make_dst(5,
                             {{0, 1, Rational(1)},
                              {0, 2, Rational(1)},
                              {0, 3, Rational(1)},
                              {0, 4, Rational(1)}},
                             0, {1, 2, 3, 4});
    auto t = brute_force_dst(d);
    auto core = find_phi_core(d, t, 2);
    CHECK(core.vertices == std::vector<int>{0});
    CHECK(core.witness.size() == 4);  // singleton subtrees T_{rw}
    for (const auto& p : core.witness) {
        CHECK(p.root == 0);
        CHECK(p.terminals.size() == 1);
    }
    CHECK(verify_phi_core(d, t, core).pass);
}

TEST_CASE("phi-core: l(t) == phi gives the root alone with one piece") {
    DstInstance d = make_dst(4, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {1, 3, Rational(1)}},
                             0, {2, 3});
    auto t = brute_force_dst(d);
    auto core = find_phi_core(d, t, 2);
    CHECK(core.vertices == std::vector<int>{0});
    CHECK(core.witness.size() == 1);
    CHECK(core.witness[0].terminals == std::vector<int>{2, 3});
    CHECK(verify_phi_core(d, t, core).pass);
}

TEST_CASE("phi-core witness validates and obeys the size bound on random trees") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        int terminals = 2 + (int)(seed % 5);
        auto d = gen_dst({.vertices = 9, .extra_arcs = 3, .terminals = terminals}, seed);
        auto t = dreyfus_wagner_directed(d, d.root, d.terminals);
        for (int phi = 1; phi <= 3; ++phi) {
            auto core = find_phi_core(d, t, phi);
            CAPTURE(seed, phi);
            auto rep = verify_phi_core(d, t, core);
            CAPTURE(rep.violations);
            CHECK(rep.pass);
            int bound = ((int)d.terminals.size() + phi - 1) / phi;
            CHECK((int)core.vertices.size() <= bound);
        }
    }
}

TEST_CASE("witness checker catches a broken witness") {
    DstInstance d = make_dst(4, {{0, 1, Rational(1)}, {0, 2, Rational(1)}, {0, 3, Rational(1)}},
                             0, {1, 2, 3});
    auto t = brute_force_dst(d);
    auto core = find_phi_core(d, t, 1);
    SECTION("terminal dropped from every piece") {
        auto broken = core;
        broken.witness.pop_back();
        CHECK(!verify_phi_core(d, t, broken).pass);
    }
    SECTION("piece cap violated") {
        auto broken = core;
        broken.witness[0].terminals.push_back(broken.witness[1].terminals[0]);
        broken.witness[1].terminals.clear();
        CHECK(!verify_phi_core(d, t, broken).pass);
    }
    SECTION("foreign root") {
        auto broken = core;
        broken.witness[0].root = 2;
        CHECK(!verify_phi_core(d, t, broken).pass);
    }
}

TEST_CASE("min-density set: single terminal from the root") {
    DstInstance d = make_dst(3, {{0, 1, Rational(2)}, {1, 2, Rational(3)}}, 0, {2});
    auto table = build_steiner_table(d, d.terminals, 1);
    auto view = make_bounded_view(d, table, {0}, 1);
    auto pick = min_density_set(view);
    CHECK(pick.density == Rational(5));
    CHECK(pick.root == 0);
    CHECK(pick.mask == 1u);
}

TEST_CASE("min-density on the encoded instance equals the best set density") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        auto sc = gen_set_cover({.universe = 5, .sets = 4, .max_set_size = 4}, seed);
        DstInstance d = set_cover_as_dst(sc);
        int phi = 0;
        for (const auto& s : sc.sets) phi = std::max(phi, (int)s.members.size());
        auto table = build_steiner_table(d, d.terminals, phi);
        auto view = make_bounded_view(d, table, {d.root}, phi);
        auto pick = min_density_set(view);
        std::optional<Rational> best_set_density;
        for (const auto& s : sc.sets) {
            if (s.members.empty()) continue;
            Rational density = s.cost / Rational((int64_t)s.members.size());
            if (!best_set_density || density < *best_set_density) best_set_density = density;
        }
        REQUIRE(best_set_density.has_value());
        CAPTURE(seed);
        CHECK(pick.density == *best_set_density);
    }
}

TEST_CASE("min-density matches the exhaustive (Y, s) oracle") {
    for (uint64_t seed = 1; seed <= 15; ++seed) {
        auto d = gen_dst({.vertices = 7, .extra_arcs = 5, .terminals = 4}, seed);
        int phi = 1 + (int)(seed % 3);
        auto table = build_steiner_table(d, d.terminals, phi);
        std::vector<int> roots{d.root, 1 + (int)(seed % (d.vertex_count - 1))};
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        auto view = make_bounded_view(d, table, roots, phi);
        auto pick = min_density_set(view);
        auto oracle = density_oracle(d, roots, d.terminals, phi);
        REQUIRE(oracle.has_value());
        CAPTURE(seed, phi);
        CHECK(pick.density == *oracle);
    }
}

TEST_CASE("min-density reports when nothing is coverable") {
    DstInstance iso = make_dst(4, {{0, 1, Rational(1)}, {1, 2, Rational(1)}}, 0, {2});
    auto table = build_steiner_table(iso, iso.terminals, 1);
    auto view = make_bounded_view(iso, table, {3}, 1);
    try {
        min_density_set(view);
        FAIL("expected NoCoverableTerminal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoCoverableTerminal);
    }
}

TEST_CASE("greedy bounded cover: one pick suffices on a short path") {
    DstInstance d = make_dst(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}}, 0, {2});
    auto table = build_steiner_table(d, d.terminals, 1);
    auto picks = greedy_bounded_cover(make_bounded_view(d, table, {0}, 1));
    CHECK(picks.size() == 1);
    CHECK(picks[0].tree.cost == Rational(2));
}

TEST_CASE("greedy bounded cover mirrors greedy set cover on the encoded example") {
    auto sc = abc_instance();
    DstInstance d = set_cover_as_dst(sc);
    auto table = build_steiner_table(d, d.terminals, 4);
    auto picks = greedy_bounded_cover(make_bounded_view(d, table, {d.root}, 4));
    // element vertices are 4..7: first pick covers {4,5} (= set A), then {6,7}
    REQUIRE(picks.size() == 2);
    CHECK(picks[0].mask == 0b0011u);
    CHECK(picks[0].tree.cost == Rational(1));
    CHECK(picks[1].mask == 0b1100u);
    CHECK(picks[1].tree.cost == Rational(1));
}

TEST_CASE("greedy bounded cover partitions the terminals in at most N picks") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        auto d = gen_dst({.vertices = 8, .extra_arcs = 5, .terminals = 5}, seed);
        int phi = 2;
        auto table = build_steiner_table(d, d.terminals, phi);
        auto picks = greedy_bounded_cover(make_bounded_view(d, table, {d.root}, phi));
        CHECK(picks.size() <= d.terminals.size());
        uint32_t seen = 0;
        for (const auto& p : picks) {
            CHECK((seen & p.mask) == 0);  // disjoint
            seen |= p.mask;
        }
        CHECK(seen == (1u << d.terminals.size()) - 1);
    }
}

TEST_CASE("assemble: core {r} is just the union of the pieces") {
    DstInstance d = make_dst(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}}, 0, {2});
    auto table = build_steiner_table(d, d.terminals, 1);
    auto picks = greedy_bounded_cover(make_bounded_view(d, table, {0}, 1));
    auto sol = assemble(d, {0}, picks);
    CHECK(sol.cost == Rational(2));
    CHECK(validate_arborescence(d, sol).pass);
}

TEST_CASE("assemble sheds shared arcs, landing strictly below the naive sum") {
    // both pieces need the 5-cost arc r->m
    DstInstance d = make_dst(4,
                             {{0, 1, Rational(5)},
                              {1, 2, Rational(1)},
                              {1, 3, Rational(1)}},
                             0, {2, 3});
    auto table = build_steiner_table(d, d.terminals, 1);
    auto picks = greedy_bounded_cover(make_bounded_view(d, table, {0}, 1));
    REQUIRE(picks.size() == 2);
    Rational naive = picks[0].tree.cost + picks[1].tree.cost;
    auto sol = assemble(d, {0}, picks);
    CHECK(sol.cost == Rational(7));
    CHECK(sol.cost < naive);  // 7 < 12: the 5-cost arc is paid once
    CHECK(validate_arborescence(d, sol).pass);
}

TEST_CASE("assemble rejects cores unreachable from the root") {
    DstInstance d = make_dst(4, {{0, 1, Rational(1)}, {1, 2, Rational(1)}}, 0, {2});
    auto table = build_steiner_table(d, d.terminals, 1);
    auto picks = greedy_bounded_cover(make_bounded_view(d, table, {0}, 1));
    try {
        assemble(d, {0, 3}, picks);
        FAIL("expected UnreachableCoreVertex");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnreachableCoreVertex);
    }
}

TEST_CASE("dst_approx: the gamma dial sets phi = ceil(N^(1-gamma))") {
    // N = 16 terminals in a wide star: gamma = 1/2 -> phi = 4
    std::vector<DstInstance::Arc> arcs;
    std::vector<int> terms;
    for (int i = 1; i <= 16; ++i) {
        arcs.push_back({0, i, Rational(1)});
        terms.push_back(i);
    }
    DstInstance d = make_dst(17, std::move(arcs), 0, std::move(terms));
    auto res = dst_approx(d, Rational(1, 2));
    CHECK(res.phi == 4);
    CHECK(res.ratio_bound == chvatal_bound(4));
    CHECK(res.solution.cost == Rational(16));
}

TEST_CASE("dst_approx is exact on a path when N <= phi") {
    DstInstance d = make_dst(4, {{0, 1, Rational(2)}, {1, 2, Rational(3)}, {2, 3, Rational(4)}},
                             0, {3});
    auto res = dst_approx(d, Rational(1, 2));
    CHECK(res.solution.cost == Rational(9));
    CHECK(res.solution.cost == brute_force_dst(d).cost);
}

TEST_CASE("dst_approx demands a leafified instance and valid gamma") {
    DstInstance d = make_dst(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}}, 0, {1, 2});
    CHECK_THROWS_AS(dst_approx(d, Rational(1, 2)), Error);  // terminal 1 is internal
    DstInstance ok = leafify(d);
    CHECK_NOTHROW(dst_approx(ok, Rational(1, 2)));
    CHECK_THROWS_AS(dst_approx(ok, Rational(1, 4)), Error);
    CHECK_THROWS_AS(dst_approx(ok, Rational(1)), Error);
}

TEST_CASE("dst_approx ratio against the brute-force optimum") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        auto raw = gen_dst({.vertices = 8, .extra_arcs = 4, .terminals = 4}, seed);
        auto d = leafify(raw);
        if (d.arcs.size() > 20) continue;
        auto res = dst_approx(d, Rational(1, 2));
        auto opt = brute_force_dst(d);
        CAPTURE(seed, res.phi);
        CHECK(validate_arborescence(d, res.solution).pass);
        CHECK(!(res.ratio_bound * opt.cost < res.solution.cost));
    }
}

TEST_CASE("raising the core cap never yields a worse solution") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        auto d = leafify(gen_dst({.vertices = 7, .extra_arcs = 4, .terminals = 4}, seed));
        auto small_cap = dst_approx(d, Rational(1, 2));
        DstApproxOptions opt;
        opt.double_core_cap = true;
        auto big_cap = dst_approx(d, Rational(1, 2), opt);
        CAPTURE(seed);
        CHECK(!(small_cap.solution.cost < big_cap.solution.cost));
    }
}

TEST_CASE("threaded candidate evaluation stays within the certified bound") {
    auto d = leafify(gen_dst({.vertices = 9, .extra_arcs = 5, .terminals = 5}, 77));
    auto seq = dst_approx(d, Rational(1, 2));
    DstApproxOptions opt;
    opt.threads = 4;
    auto par = dst_approx(d, Rational(1, 2), opt);
    CHECK(validate_arborescence(d, par.solution).pass);
    if (d.arcs.size() <= 20) {
        auto optimum = brute_force_dst(d);
        CHECK(!(par.ratio_bound * optimum.cost < par.solution.cost));
        CHECK(!(seq.ratio_bound * optimum.cost < seq.solution.cost));
    }
}

TEST_CASE("decomposition identity on a path with phi >= N") {
    DstInstance d = make_dst(4, {{0, 1, Rational(2)}, {1, 2, Rational(3)}, {2, 3, Rational(4)}},
                             0, {3});
    auto t = brute_force_dst(d);
    auto audit = decomposition_audit(d, t, 4);
    CHECK(audit.core == std::vector<int>{0});
    CHECK(audit.backbone_cost == Rational(0));
    CHECK(audit.cover_cost == t.cost);
    CHECK(audit.equality);
}

TEST_CASE("decomposition identity holds on random optima") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        auto d = gen_dst({.vertices = 8, .extra_arcs = 4, .terminals = 4}, seed);
        auto t = brute_force_dst(d);
        auto audit = decomposition_audit(d, t, 2);
        CAPTURE(seed, audit.opt_cost.str(), audit.cover_cost.str(), audit.backbone_cost.str());
        CHECK(audit.equality);
    }
}

TEST_CASE("decomposition identity with the set-node core of an optimal cover") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        auto sc = gen_set_cover({.universe = 5, .sets = 4, .max_set_size = 3}, seed);
        DstInstance d = set_cover_as_dst(sc);
        if (d.arcs.size() > 20) continue;
        auto t = brute_force_dst(d);
        auto opt_cover = brute_force_set_cover(sc);
        int phi = 0;
        for (const auto& s : sc.sets) phi = std::max(phi, (int)s.members.size());
        std::vector<int> core;
        for (int j : opt_cover.chosen) core.push_back(1 + j);  // set-node ids
        auto audit = decomposition_audit(d, t, phi, core);
        CAPTURE(seed);
        CHECK(audit.equality);
    }
}

TEST_CASE("decomposition audit on the double-payment example needs the heavy core") {
    // r -7-> a -0-> v, v -> {t1,t2,t3} at cost 1 each, a -1-> t4; phi = 2.
    DstInstance d = make_dst(7,
                             {{0, 1, Rational(7)},
                              {1, 2, Rational(0)},
                              {2, 3, Rational(1)},
                              {2, 4, Rational(1)},
                              {2, 5, Rational(1)},
                              {1, 6, Rational(1)}},
                             0, {3, 4, 5, 6});
    auto t = brute_force_dst(d);
    REQUIRE(t.cost == Rational(11));
    // the heavy core {0,1,2} splits cleanly: 4 + 7 == 11
    auto audit = decomposition_audit(d, t, 2);
    CHECK(audit.core == std::vector<int>{0, 1, 2});
    CHECK(audit.equality);
    // the carving core {0,2} double-pays the r->a->v spine: 11 + 7 != 11
    auto bad = decomposition_audit(d, t, 2, std::vector<int>{0, 2});
    CHECK(!bad.equality);
    CHECK(bad.opt_cost < bad.cover_cost + bad.backbone_cost);
}
