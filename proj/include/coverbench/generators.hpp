#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "coverbench/errors.hpp"
#include "coverbench/instances.hpp"
#include "coverbench/prng.hpp"
#include "coverbench/rational.hpp"

namespace coverbench {

// Seeded random instance builders. Everything is a pure function of
// (parameters, seed); re-running with the same seed reproduces the instance
// bit for bit.

struct GenScParams {
    int universe = 8;
    int sets = 5;
    int max_set_size = 0;  // 0 = universe
    int min_cost = 1;
    int max_cost = 9;
};

inline SetCoverInstance gen_set_cover(const GenScParams& p, uint64_t seed) {
    if (p.universe < 0 || p.sets < 1 || p.min_cost < 0 || p.max_cost < p.min_cost)
        fail(ErrorCode::BadParameters, "bad set-cover generator parameters");
    Rng rng(seed);
    SetCoverInstance sc;
    sc.universe_size = p.universe;
    int cap = p.max_set_size > 0 ? std::min(p.max_set_size, p.universe) : p.universe;
    for (int j = 0; j < p.sets; ++j) {
        SetCoverInstance::Set s;
        s.cost = Rational(rng.in_range(p.min_cost, p.max_cost));
        if (p.universe > 0) {
            int size = 1 + rng.below(std::max(1, cap));
            s.members = rng.sample(p.universe, size);
        }
        sc.sets.push_back(std::move(s));
    }
    // patch coverability: drop uncovered elements into a random set
    std::vector<bool> covered(p.universe, false);
    for (const auto& s : sc.sets)
        for (int e : s.members) covered[e] = true;
    for (int e = 0; e < p.universe; ++e) {
        if (covered[e]) continue;
        auto& s = sc.sets[rng.below(p.sets)];
        s.members.push_back(e);
        std::sort(s.members.begin(), s.members.end());
    }
    return sc;
}

struct GenDstParams {
    int vertices = 8;
    int extra_arcs = 4;
    int terminals = 3;
    int min_cost = 1;
    int max_cost = 9;
};

// Root 0, a random backbone arborescence (so every vertex is reachable), plus
// extra random arcs. Terminals are sampled from the non-root vertices.
inline DstInstance gen_dst(const GenDstParams& p, uint64_t seed) {
    if (p.vertices < 2 || p.terminals < 1 || p.terminals > p.vertices - 1 ||
        p.min_cost < 0 || p.max_cost < p.min_cost)
        fail(ErrorCode::BadParameters, "bad DST generator parameters");
    Rng rng(seed);
    std::vector<DstInstance::Arc> arcs;
    for (int v = 1; v < p.vertices; ++v)
        arcs.push_back({rng.below(v), v, Rational(rng.in_range(p.min_cost, p.max_cost))});
    int added = 0, attempts = 0;
    while (added < p.extra_arcs && attempts++ < 50 * (p.extra_arcs + 1)) {
        int t = rng.below(p.vertices), h = rng.below(p.vertices);
        if (t == h) continue;
        bool dup = false;
        for (const auto& a : arcs)
            if (a.tail == t && a.head == h) {
                dup = true;
                break;
            }
        if (dup) continue;
        arcs.push_back({t, h, Rational(rng.in_range(p.min_cost, p.max_cost))});
        ++added;
    }
    std::vector<int> pool(p.vertices - 1);
    for (int v = 1; v < p.vertices; ++v) pool[v - 1] = v;
    rng.shuffle(pool);
    pool.resize(p.terminals);
    return make_dst(p.vertices, std::move(arcs), 0, std::move(pool));
}

struct GenLcParams {
    int a_count = 3;
    int b_count = 2;
    int b_degree = 3;  // |A| * a_degree = |B| * b_degree must hold
    int sigma_a = 3;
    int sigma_b = 3;
};

namespace detail {

inline LabelCoverInstance lc_skeleton(const GenLcParams& p, Rng& rng) {
    long long edge_count = (long long)p.b_count * p.b_degree;
    if (p.a_count < 1 || p.b_count < 1 || p.sigma_a < 1 || p.sigma_b < 1 || p.b_degree < 1)
        fail(ErrorCode::BadParameters, "bad label-cover generator parameters");
    if (edge_count % p.a_count != 0)
        fail(ErrorCode::BadParameters,
             "|B| * b_degree must be divisible by |A| for a bi-regular instance");
    int a_degree = (int)(edge_count / p.a_count);
    if (p.b_degree > p.a_count)
        fail(ErrorCode::BadParameters,
             "b_degree exceeds |A|; simple bipartite instance impossible");

    LabelCoverInstance lc;
    lc.a_count = p.a_count;
    lc.b_count = p.b_count;
    lc.sigma_a = p.sigma_a;
    lc.sigma_b = p.sigma_b;
    lc.bi_regular = true;
    lc.a_degree = a_degree;
    lc.b_degree = p.b_degree;

    // configuration model with simplicity rejection: deal a-stubs to b-slots
    std::vector<int> stubs;
    for (int a = 0; a < p.a_count; ++a)
        for (int i = 0; i < a_degree; ++i) stubs.push_back(a);
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 2000)
            fail(ErrorCode::BadParameters, "could not sample a simple bi-regular graph");
        rng.shuffle(stubs);
        bool simple = true;
        for (int b = 0; b < p.b_count && simple; ++b) {
            for (int i = 0; i < p.b_degree && simple; ++i)
                for (int j = i + 1; j < p.b_degree; ++j)
                    if (stubs[b * p.b_degree + i] == stubs[b * p.b_degree + j]) {
                        simple = false;
                        break;
                    }
        }
        if (!simple) continue;
        for (int b = 0; b < p.b_count; ++b) {
            std::vector<int> incident(stubs.begin() + (size_t)b * p.b_degree,
                                      stubs.begin() + (size_t)(b + 1) * p.b_degree);
            std::sort(incident.begin(), incident.end());
            for (int slot = 0; slot < p.b_degree; ++slot)
                lc.edges.push_back({incident[slot], b, slot});
        }
        break;
    }
    return lc;
}

}  // namespace detail

inline LabelCoverInstance gen_label_cover(const GenLcParams& p, uint64_t seed) {
    Rng rng(seed);
    LabelCoverInstance lc = detail::lc_skeleton(p, rng);
    for (size_t i = 0; i < lc.edges.size(); ++i) {
        std::vector<int> pi(p.sigma_a);
        for (int s = 0; s < p.sigma_a; ++s) pi[s] = rng.below(p.sigma_b);
        lc.projections.push_back(std::move(pi));
    }
    return lc;
}

// Plants a labeling that covers every edge, then randomizes the rest of each
// projection table. Returns the instance and its planted witness.
inline std::pair<LabelCoverInstance, Labeling> gen_label_cover_planted(const GenLcParams& p,
                                                                       uint64_t seed) {
    Rng rng(seed);
    LabelCoverInstance lc = detail::lc_skeleton(p, rng);
    Labeling planted;
    for (int a = 0; a < p.a_count; ++a) planted.phi_a.push_back(rng.below(p.sigma_a));
    for (int b = 0; b < p.b_count; ++b) planted.phi_b.push_back(rng.below(p.sigma_b));
    for (size_t i = 0; i < lc.edges.size(); ++i) {
        std::vector<int> pi(p.sigma_a);
        for (int s = 0; s < p.sigma_a; ++s) pi[s] = rng.below(p.sigma_b);
        pi[planted.phi_a[lc.edges[i].a]] = planted.phi_b[lc.edges[i].b];
        lc.projections.push_back(std::move(pi));
    }
    return {lc, planted};
}

}  // namespace coverbench
