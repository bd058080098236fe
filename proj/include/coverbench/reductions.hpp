#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coverbench/errors.hpp"
#include "coverbench/exact.hpp"
#include "coverbench/instances.hpp"
#include "coverbench/numeric.hpp"
#include "coverbench/prng.hpp"
#include "coverbench/rational.hpp"

namespace coverbench {

// The Label-Cover -> Set-Cover pipeline: labeling search and soundness
// measurement, the agreement-soundness transform through a disperser graph,
// partition systems with their verifier, the BxU gadget, and the parameter
// schedule that strings the stages together.

// ============================================================================
// Labeling search and (list-)agreement soundness measurement
// ============================================================================

// Exact best labeling: enumerates A-side assignments and projects the optimal
// B-side per vertex by majority vote. Returns the labeling and the covered
// fraction of edges. The first assignment (counter order from all-zeros)
// attaining the maximum wins, so results are deterministic.
inline std::pair<Labeling, Rational> best_labeling(const LabelCoverInstance& lc,
                                                   uint64_t budget = 2'000'000) {
    if (lc.edges.empty()) {
        Labeling id;
        id.phi_a.assign(lc.a_count, 0);
        id.phi_b.assign(lc.b_count, 0);
        return {id, Rational(1)};
    }
    double combos = std::pow((double)lc.sigma_a, (double)lc.a_count);
    if (combos > (double)budget)
        fail(ErrorCode::BudgetExceeded,
             "A-side enumeration needs about " + std::to_string((uint64_t)combos) +
                 " assignments; budget is " + std::to_string(budget));

    std::vector<std::vector<int>> edges_of_b(lc.b_count);
    for (int i = 0; i < (int)lc.edges.size(); ++i) edges_of_b[lc.edges[i].b].push_back(i);

    std::vector<int> phi_a(lc.a_count, 0);
    std::vector<int> counts(lc.sigma_b);
    long long best_covered = -1;
    Labeling best;
    for (;;) {
        long long covered = 0;
        std::vector<int> phi_b(lc.b_count, 0);
        for (int b = 0; b < lc.b_count; ++b) {
            std::fill(counts.begin(), counts.end(), 0);
            int top = 0, top_sym = 0;
            for (int ei : edges_of_b[b]) {
                int sym = lc.projections[ei][phi_a[lc.edges[ei].a]];
                if (++counts[sym] > top) {
                    top = counts[sym];
                    top_sym = sym;
                } else if (counts[sym] == top && sym < top_sym) {
                    top_sym = sym;
                }
            }
            covered += top;
            phi_b[b] = top_sym;
        }
        if (covered > best_covered) {
            best_covered = covered;
            best.phi_a = phi_a;
            best.phi_b = phi_b;
        }
        // odometer increment
        int pos = lc.a_count - 1;
        while (pos >= 0 && ++phi_a[pos] == lc.sigma_a) phi_a[pos--] = 0;
        if (pos < 0) break;
    }
    return {best, Rational(best_covered, (int64_t)lc.edges.size())};
}

struct SoundnessMeasurement {
    Rational value;       // max fraction of B-vertices NOT in total disagreement
    bool exhaustive = true;
    uint64_t assignments = 0;
};

// Worst-case non-disagreement fraction under list assignments of size ell.
// For ell = 1 this is plain agreement soundness. Exhaustive over all
// assignments of ell-subsets of Sigma_A to A-vertices; a pair of edges into b
// agrees when their projected symbol sets intersect (distinct A endpoints
// only).
inline SoundnessMeasurement measure_agreement_soundness(const LabelCoverInstance& lc, int ell,
                                                        uint64_t budget = 2'000'000) {
    if (ell < 1) fail(ErrorCode::BadParameters, "list bound must be >= 1");
    if (lc.sigma_b > 64)
        fail(ErrorCode::BudgetExceeded, "soundness measurement supports |Sigma_B| <= 64");
    ell = std::min(ell, lc.sigma_a);

    // All ell-subsets of Sigma_A, lexicographic.
    std::vector<std::vector<int>> lists;
    std::vector<int> combo(ell);
    auto gen = [&](auto&& self, int start, int depth) -> void {
        if (depth == ell) {
            lists.push_back(combo);
            return;
        }
        for (int s = start; s < lc.sigma_a; ++s) {
            combo[depth] = s;
            self(self, s + 1, depth + 1);
        }
    };
    gen(gen, 0, 0);

    double combos = std::pow((double)lists.size(), (double)lc.a_count);
    if (combos > (double)budget)
        fail(ErrorCode::BudgetExceeded,
             "list-assignment enumeration needs about " + std::to_string((uint64_t)combos) +
                 " assignments; budget is " + std::to_string(budget));

    // proj_set[ei][li]: bitset over Sigma_B of the projections of list li
    // through edge ei.
    std::vector<std::vector<uint64_t>> proj_set(lc.edges.size(),
                                                std::vector<uint64_t>(lists.size(), 0));
    for (size_t ei = 0; ei < lc.edges.size(); ++ei)
        for (size_t li = 0; li < lists.size(); ++li)
            for (int sym : lists[li]) proj_set[ei][li] |= 1ull << lc.projections[ei][sym];

    std::vector<std::vector<int>> edges_of_b(lc.b_count);
    for (int i = 0; i < (int)lc.edges.size(); ++i) edges_of_b[lc.edges[i].b].push_back(i);

    std::vector<int> pick(lc.a_count, 0);
    SoundnessMeasurement out;
    out.value = Rational(0);
    for (;;) {
        ++out.assignments;
        int agreeing = 0;
        for (int b = 0; b < lc.b_count; ++b) {
            bool agree = false;
            const auto& eb = edges_of_b[b];
            for (size_t i = 0; i < eb.size() && !agree; ++i)
                for (size_t j = i + 1; j < eb.size() && !agree; ++j) {
                    if (lc.edges[eb[i]].a == lc.edges[eb[j]].a) continue;
                    agree = (proj_set[eb[i]][pick[lc.edges[eb[i]].a]] &
                             proj_set[eb[j]][pick[lc.edges[eb[j]].a]]) != 0;
                }
            if (agree) ++agreeing;
        }
        Rational frac(agreeing, lc.b_count);
        if (out.value < frac) out.value = frac;
        int pos = lc.a_count - 1;
        while (pos >= 0 && ++pick[pos] == (int)lists.size()) pick[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

// ============================================================================
// Disperser graphs (Lemma "combinatorial" stand-in)
// ============================================================================

// Right-regular bipartite H = (U, V) with |U| = q and V-degree D, built from a
// seed by balanced rounds: each round deals every v one fresh u with all u's
// hit equally often, so both sides end up regular. The explicit construction
// from the literature is replaced by this seeded randomized one plus the
// verifier below.
struct DisperserGraph {
    int q = 0;  // |U|
    int d = 0;  // V-degree
    int v_count = 0;
    std::vector<std::vector<int>> v_neighbors;  // per v, ascending distinct u's
    uint64_t seed = 0;
    Rational eps;
};

inline DisperserGraph build_disperser(int q, int d, const Rational& eps, uint64_t seed,
                                      int v_count = 0) {
    if (d < 2 || !is_prime_power(d))
        fail(ErrorCode::BadParameters, "D must be a prime power >= 2");
    if (!is_power_of(q, d))
        fail(ErrorCode::BadParameters,
             "q = " + std::to_string(q) + " is not a power of D = " + std::to_string(d));
    if (v_count == 0) v_count = q * q;
    if (v_count % q != 0)
        fail(ErrorCode::BadParameters, "|V| must be divisible by q for balanced rounds");
    DisperserGraph h;
    h.q = q;
    h.d = d;
    h.v_count = v_count;
    h.seed = seed;
    h.eps = eps;
    h.v_neighbors.assign(v_count, {});

    Rng rng(seed);
    int per_round = v_count / q;
    for (int round = 0; round < d; ++round) {
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 1000)
                fail(ErrorCode::BadParameters, "disperser round could not avoid duplicates");
            std::vector<int> deal(v_count);
            for (int i = 0; i < v_count; ++i) deal[i] = i / per_round;
            rng.shuffle(deal);
            bool clash = false;
            for (int v = 0; v < v_count && !clash; ++v)
                for (int u : h.v_neighbors[v])
                    if (u == deal[v]) {
                        clash = true;
                        break;
                    }
            if (clash) continue;
            for (int v = 0; v < v_count; ++v) h.v_neighbors[v].push_back(deal[v]);
            break;
        }
    }
    for (auto& nb : h.v_neighbors) std::sort(nb.begin(), nb.end());
    return h;
}

struct DisperserCheck {
    bool pass = true;
    bool exhaustive = true;
    Rational worst_fraction;                 // max fraction of collided v's seen
    std::vector<std::vector<int>> witness;   // violating partition, if any
};

namespace detail {

inline Rational collision_fraction(const DisperserGraph& h, const std::vector<int>& part_of) {
    int bad = 0;
    for (const auto& nb : h.v_neighbors) {
        bool collide = false;
        for (size_t i = 0; i < nb.size() && !collide; ++i)
            for (size_t j = i + 1; j < nb.size() && !collide; ++j)
                collide = part_of[nb[i]] == part_of[nb[j]];
        if (collide) ++bad;
    }
    return Rational(bad, h.v_count);
}

}  // namespace detail

// Property check: for every partition of U into parts of size <= eps*|U|, at
// most an eps*D^2 fraction of V sees two neighbors in one part. Exhaustive
// over all set partitions for q <= 8, seeded sampling above that
// ("spot-checked").
inline DisperserCheck verify_disperser(const DisperserGraph& h, const Rational& eps,
                                       uint64_t seed = 1, int samples = 2000) {
    DisperserCheck out;
    Rational cap_r = eps * Rational(h.q);
    Rational bound = eps * Rational((int64_t)h.d * h.d);
    out.worst_fraction = Rational(0);

    auto check_assignment = [&](const std::vector<int>& part_of) {
        Rational frac = detail::collision_fraction(h, part_of);
        if (out.worst_fraction < frac) out.worst_fraction = frac;
        if (bound < frac) {
            out.pass = false;
            if (out.witness.empty()) {
                int parts = *std::max_element(part_of.begin(), part_of.end()) + 1;
                out.witness.assign(parts, {});
                for (int u = 0; u < h.q; ++u) out.witness[part_of[u]].push_back(u);
            }
        }
    };

    if (h.q <= 8) {
        // restricted-growth enumeration of set partitions, filtered by part size
        std::vector<int> part_of(h.q, 0);
        std::vector<int> sizes(h.q, 0);
        auto rec = [&](auto&& self, int u, int used) -> void {
            if (u == h.q) {
                check_assignment(part_of);
                return;
            }
            for (int p = 0; p <= used; ++p) {
                if (Rational(sizes[p] + 1) > cap_r) continue;
                part_of[u] = p;
                sizes[p]++;
                self(self, u + 1, std::max(used, p + 1));
                sizes[p]--;
            }
        };
        rec(rec, 0, 0);
    } else {
        out.exhaustive = false;
        Rng rng(seed);
        int cap = (int)(cap_r.num() / cap_r.den());
        if (cap < 1) cap = 1;
        std::vector<int> points(h.q);
        for (int i = 0; i < h.q; ++i) points[i] = i;
        for (int it = 0; it < samples; ++it) {
            rng.shuffle(points);
            std::vector<int> part_of(h.q, 0);
            int part = 0, fill = 0, quota = 1 + rng.below(cap);
            for (int idx = 0; idx < h.q; ++idx) {
                if (fill == quota) {
                    ++part;
                    fill = 0;
                    quota = 1 + rng.below(cap);
                }
                part_of[points[idx]] = part;
                ++fill;
            }
            check_assignment(part_of);
        }
    }
    return out;
}

// ============================================================================
// Agreement-soundness transform (the B x V blow-up)
// ============================================================================

// Replaces the B side by B x V(H): edge (a, <b,v>) exists whenever a is b's
// u-th neighbor and (u,v) is an edge of H; projections are inherited from the
// original edge. Alphabets are preserved and the new B-degree is D.
inline LabelCoverInstance agreement_reduction(const LabelCoverInstance& lc,
                                              const DisperserGraph& h) {
    auto rep = validate(lc);
    if (!rep.pass) fail(ErrorCode::BadParameters, "invalid label cover: " + rep.violations[0]);
    if (!lc.bi_regular) fail(ErrorCode::BadParameters, "agreement reduction needs bi-regular input");
    if (lc.b_degree != h.q)
        fail(ErrorCode::DegreeMismatch,
             "B-degree " + std::to_string(lc.b_degree) + " != |U_H| = " + std::to_string(h.q));

    // slot -> edge lookup per b
    std::vector<std::vector<int>> slot_edge(lc.b_count, std::vector<int>(lc.b_degree, -1));
    for (int i = 0; i < (int)lc.edges.size(); ++i)
        slot_edge[lc.edges[i].b][lc.edges[i].b_slot] = i;

    LabelCoverInstance out;
    out.a_count = lc.a_count;
    out.b_count = lc.b_count * h.v_count;
    out.sigma_a = lc.sigma_a;
    out.sigma_b = lc.sigma_b;
    for (int b = 0; b < lc.b_count; ++b) {
        for (int v = 0; v < h.v_count; ++v) {
            int nb = b * h.v_count + v;
            std::vector<int> incoming;  // original edge per neighbor u
            for (int u : h.v_neighbors[v]) incoming.push_back(slot_edge[b][u]);
            std::sort(incoming.begin(), incoming.end(), [&](int x, int y) {
                return lc.edges[x].a < lc.edges[y].a;
            });
            for (int slot = 0; slot < (int)incoming.size(); ++slot) {
                int ei = incoming[slot];
                out.edges.push_back({lc.edges[ei].a, nb, slot});
                out.projections.push_back(lc.projections[ei]);
            }
        }
    }
    // recompute regularity flags
    std::vector<int> a_deg(out.a_count, 0);
    for (const auto& e : out.edges) a_deg[e.a]++;
    bool regular = true;
    for (int v = 1; v < out.a_count; ++v) regular = regular && a_deg[v] == a_deg[0];
    out.bi_regular = regular;
    out.a_degree = out.a_count > 0 ? a_deg[0] : 0;
    out.b_degree = h.d;
    return out;
}

// Lifts a labeling of the original instance to the blown-up one (every copy
// <b,v> keeps b's symbol).
inline Labeling lift_labeling(const Labeling& phi, int v_count) {
    Labeling out;
    out.phi_a = phi.phi_a;
    for (int b = 0; b < (int)phi.phi_b.size(); ++b)
        for (int v = 0; v < v_count; ++v) out.phi_b.push_back(phi.phi_b[b]);
    return out;
}

inline Rational covered_fraction(const LabelCoverInstance& lc, const Labeling& phi) {
    if (lc.edges.empty()) return Rational(1);
    int64_t covered = 0;
    for (size_t i = 0; i < lc.edges.size(); ++i)
        if (lc.projections[i][phi.phi_a[lc.edges[i].a]] == phi.phi_b[lc.edges[i].b]) ++covered;
    return Rational(covered, (int64_t)lc.edges.size());
}

// ============================================================================
// Partition systems (Lemma "nss" stand-in)
// ============================================================================

struct PartitionSystem {
    int universe = 0;                          // u
    int parts = 0;                             // D
    int count = 0;                             // m
    std::vector<std::vector<int>> assignment;  // [partition][point] -> part id
    uint64_t seed = 0;

    std::vector<int> part_members(int partition, int part) const {
        std::vector<int> out;
        for (int x = 0; x < universe; ++x)
            if (assignment[partition][x] == part) out.push_back(x);
        return out;
    }
};

// m seeded uniform partitions of [0,u) into D near-equal parts.
inline PartitionSystem build_partition_system(int u, int m, int d, uint64_t seed) {
    if (d < 2 || u < d || m < 1)
        fail(ErrorCode::BadParameters, "need u >= D >= 2 and m >= 1");
    PartitionSystem ps;
    ps.universe = u;
    ps.parts = d;
    ps.count = m;
    ps.seed = seed;
    Rng rng(seed);
    std::vector<int> points(u);
    for (int i = 0; i < u; ++i) points[i] = i;
    for (int p = 0; p < m; ++p) {
        rng.shuffle(points);
        std::vector<int> part_of(u, 0);
        // first (u mod D) parts get the extra point
        int base = u / d, extra = u % d, idx = 0;
        for (int part = 0; part < d; ++part) {
            int size = base + (part < extra ? 1 : 0);
            for (int k = 0; k < size; ++k) part_of[points[idx++]] = part;
        }
        ps.assignment.push_back(std::move(part_of));
    }
    return ps;
}

struct PartitionSystemCheck {
    bool pass = true;
    uint64_t combinations = 0;
    // witness cover when pass == false: (partition, part) pairs
    std::vector<std::pair<int, int>> witness;
};

// Exhaustive search for a cover of the universe by at most ell parts drawn
// from pairwise distinct partitions (one part per chosen partition). Passes
// when no such cover exists; a failure returns the covering witness.
inline PartitionSystemCheck verify_partition_system(const PartitionSystem& ps, int ell,
                                                    uint64_t budget = 20'000'000) {
    if (ell < 1) fail(ErrorCode::BadParameters, "ell must be >= 1");
    PartitionSystemCheck out;
    int k_max = std::min(ell, ps.count);
    uint64_t total = 0;
    for (int k = 1; k <= k_max; ++k) {
        uint64_t c = binomial_capped(ps.count, k, budget);
        uint64_t p = 1;
        for (int i = 0; i < k; ++i) {
            p *= (uint64_t)ps.parts;
            if (p > budget) break;
        }
        total += c * p;
        if (total > budget)
            fail(ErrorCode::BudgetExceeded,
                 "partition-system verification exceeds the search budget");
    }

    if (ps.universe > 128)
        fail(ErrorCode::BudgetExceeded, "partition-system verifier supports u <= 128");
    auto part_mask = [&](int partition, int part) {
        std::pair<uint64_t, uint64_t> mask{0, 0};
        for (int x = 0; x < ps.universe; ++x) {
            if (ps.assignment[partition][x] != part) continue;
            if (x < 64) mask.first |= 1ull << x;
            else mask.second |= 1ull << (x - 64);
        }
        return mask;
    };
    uint64_t full_lo = ps.universe >= 64 ? ~0ull : (1ull << ps.universe) - 1;
    uint64_t full_hi = ps.universe <= 64
                           ? 0
                           : (ps.universe == 128 ? ~0ull : (1ull << (ps.universe - 64)) - 1);

    std::vector<std::vector<std::pair<uint64_t, uint64_t>>> masks(ps.count);
    for (int p = 0; p < ps.count; ++p)
        for (int part = 0; part < ps.parts; ++part) masks[p].push_back(part_mask(p, part));

    std::vector<std::pair<int, int>> chosen;
    auto dfs = [&](auto&& self, int next_partition, int remaining, uint64_t lo,
                   uint64_t hi) -> bool {
        ++out.combinations;
        if (lo == full_lo && hi == full_hi) {
            out.witness = chosen;
            return true;
        }
        if (remaining == 0 || next_partition >= ps.count) return false;
        // skip this partition, or pick each of its parts
        if (self(self, next_partition + 1, remaining, lo, hi)) return true;
        for (int part = 0; part < ps.parts; ++part) {
            chosen.push_back({next_partition, part});
            if (self(self, next_partition + 1, remaining - 1, lo | masks[next_partition][part].first,
                     hi | masks[next_partition][part].second))
                return true;
            chosen.pop_back();
        }
        return false;
    };
    out.pass = !dfs(dfs, 0, k_max, 0, 0);
    return out;
}

// ============================================================================
// B x U gadget (Lemma "setcover")
// ============================================================================

// Elements are B x U; one unit-cost set S_{a,sigma} per (A-vertex, symbol).
// S_{a,sigma} collects, for each edge e = (a,b) that is the i-th edge into b,
// the block {b} x (i-th part of partition P_{pi_e(sigma)}).
inline SetCoverInstance lc_to_set_cover(const LabelCoverInstance& lc,
                                        const PartitionSystem& ps) {
    auto rep = validate(lc);
    if (!rep.pass) fail(ErrorCode::BadParameters, "invalid label cover: " + rep.violations[0]);
    if (ps.count != lc.sigma_b)
        fail(ErrorCode::ParameterMismatch,
             "partition system has " + std::to_string(ps.count) + " partitions, needs |Sigma_B| = " +
                 std::to_string(lc.sigma_b));
    if (!lc.bi_regular || ps.parts != lc.b_degree)
        fail(ErrorCode::ParameterMismatch,
             "partition count D must equal the (bi-regular) B-degree");

    SetCoverInstance sc;
    sc.universe_size = lc.b_count * ps.universe;
    sc.sets.assign((size_t)lc.a_count * lc.sigma_a, {});
    for (auto& s : sc.sets) s.cost = Rational(1);
    for (size_t ei = 0; ei < lc.edges.size(); ++ei) {
        const auto& e = lc.edges[ei];
        for (int sym = 0; sym < lc.sigma_a; ++sym) {
            int projected = lc.projections[ei][sym];
            auto& set = sc.sets[(size_t)e.a * lc.sigma_a + sym];
            for (int x : ps.part_members(projected, e.b_slot))
                set.members.push_back(e.b * ps.universe + x);
        }
    }
    for (auto& s : sc.sets) {
        std::sort(s.members.begin(), s.members.end());
        s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
    }
    return sc;
}

// The cover a covering labeling induces: {S_{a, phi_A(a)} : a in A}.
inline CoverSolution cover_from_labeling(const LabelCoverInstance& lc,
                                         const SetCoverInstance& sc, const Labeling& phi) {
    CoverSolution sol;
    for (int a = 0; a < lc.a_count; ++a) {
        int idx = a * lc.sigma_a + phi.phi_a[a];
        sol.chosen.push_back(idx);
        sol.cost += sc.sets[idx].cost;
    }
    return sol;
}

// ============================================================================
// Parameter schedule (Theorem "setcover")
// ============================================================================

struct ReductionParams {
    Rational gamma, delta;
    Rational alpha;        // 2*delta
    int64_t d = 0;         // smallest prime power >= 2/alpha
    Rational gamma_prime;  // (gamma - delta) / (1 - delta)
    int64_t n0 = 0;        // input LC size
    int64_t n1 = 0;        // blown-up LC size
    int64_t u = 0;         // ceil(n1^((1-gamma')/gamma'))
    bool u_overridden = false;
    int64_t ell = 0;       // ceil(D (1-alpha) ln u)
    Rational eps0;         // alpha / (2 D^2 ell^2)
    Rational eps;          // eps0^2 D^2
    int64_t q = 0;         // input B-degree
    // report-only diagnostics
    double gap = 0.0;           // (1-delta)(1-gamma') ln N
    double ln_u = 0.0;          // should match (1-gamma') ln N
    double ln_n_scaled = 0.0;   // (1-gamma') ln N
    bool u_relation_ok = true;  // u >= (D^(log2 D) ln m)^(1/alpha), constant 1
};

inline ReductionParams schedule_params(int64_t n0, const Rational& gamma, const Rational& delta,
                                       int64_t n1) {
    if (!(Rational(0) < delta) || !(delta < gamma) || !(gamma < Rational(1)))
        fail(ErrorCode::BadParameters, "need 0 < delta < gamma < 1");
    if (!(delta < Rational(1, 2)))
        fail(ErrorCode::BadParameters, "need delta < 1/2 so alpha = 2*delta stays below 1");
    if (n1 < 2) fail(ErrorCode::BadParameters, "n1 must be >= 2");

    ReductionParams p;
    p.gamma = gamma;
    p.delta = delta;
    p.n0 = n0;
    p.n1 = n1;
    p.alpha = Rational(2) * delta;
    Rational two_over_alpha = Rational(2) / p.alpha;
    int64_t d_floor = two_over_alpha.num() / two_over_alpha.den();
    if (Rational(d_floor) < two_over_alpha) ++d_floor;
    p.d = smallest_prime_power_at_least(d_floor);
    p.gamma_prime = (gamma - delta) / (Rational(1) - delta);
    // (1 - gamma') / gamma' simplifies to (1 - gamma) / (gamma - delta)
    Rational exponent = (Rational(1) - gamma) / (gamma - delta);
    p.u = ceil_pow_rational(n1, exponent.num(), exponent.den());
    if (p.u < 2) p.u = 2;
    double one_minus_alpha = (Rational(1) - p.alpha).to_double();
    p.ell = (int64_t)std::ceil((double)p.d * one_minus_alpha * std::log((double)p.u));
    if (p.ell < 1) p.ell = 1;
    p.eps0 = p.alpha / (Rational(2) * Rational(p.d * p.d) * Rational(p.ell * p.ell));
    p.eps = p.eps0 * p.eps0 * Rational(p.d * p.d);

    double n_elems = (double)n1 * (double)p.u;
    double one_minus_gp = (Rational(1) - p.gamma_prime).to_double();
    p.ln_u = std::log((double)p.u);
    p.ln_n_scaled = one_minus_gp * std::log(n_elems);
    p.gap = (Rational(1) - delta).to_double() * one_minus_gp * std::log(n_elems);
    return p;
}

// ============================================================================
// End-to-end pipeline
// ============================================================================

struct PipelineOptions {
    int64_t u_override = 0;   // 0 = use the schedule's u
    int vh_override = 0;      // 0 = q^2
    bool run_audits = true;   // measurements / verifiers, when within budget
    uint64_t audit_budget = 2'000'000;
};

struct PipelineResult {
    ReductionParams params;
    DisperserGraph disperser;
    LabelCoverInstance reduced;
    PartitionSystem partitions;
    SetCoverInstance sc;
    // audit fields
    int64_t n_elements = 0;
    int64_t m_sets = 0;
    bool n_formula_ok = false;  // N == |B'| * u
    bool coverable = false;
    std::optional<Rational> measured_la_soundness;  // at ell, when within budget
    std::optional<bool> partition_system_ok;
    std::optional<bool> disperser_ok;
    std::vector<std::string> notes;
};

inline PipelineResult run_pipeline(const LabelCoverInstance& lc, const Rational& gamma,
                                   const Rational& delta, uint64_t seed,
                                   const PipelineOptions& opt = {}) {
    auto rep = validate(lc);
    if (!rep.pass) fail(ErrorCode::BadParameters, "invalid label cover: " + rep.violations[0]);
    if (!lc.bi_regular)
        fail(ErrorCode::BadParameters, "pipeline input must be bi-regular");

    PipelineResult out;
    int q = lc.b_degree;
    // D depends only on delta; q must be one of its powers.
    Rational alpha = Rational(2) * delta;
    if (!(Rational(0) < delta) || !(delta < Rational(1, 2)))
        fail(ErrorCode::BadParameters, "need 0 < delta < 1/2");
    Rational two_over_alpha = Rational(2) / alpha;
    int64_t d_floor = two_over_alpha.num() / two_over_alpha.den();
    if (Rational(d_floor) < two_over_alpha) ++d_floor;
    int64_t d = smallest_prime_power_at_least(d_floor);
    if (!is_power_of(q, d))
        fail(ErrorCode::BadParameters,
             "input B-degree " + std::to_string(q) + " is not a power of D = " +
                 std::to_string(d) + "; regenerate the label cover with B-degree D^k");

    int vh = opt.vh_override > 0 ? opt.vh_override : q * q;
    int64_t n0 = lc.a_count + lc.b_count + (int64_t)lc.edges.size();
    int64_t n1 = lc.a_count + (int64_t)lc.b_count * vh + (int64_t)lc.b_count * vh * d;
    out.params = schedule_params(n0, gamma, delta, n1);
    out.params.q = q;
    if (opt.u_override > 0) {
        out.params.u = opt.u_override;
        out.params.u_overridden = true;
        out.params.ell = (int64_t)std::ceil(
            (double)out.params.d * (Rational(1) - out.params.alpha).to_double() *
            std::log((double)out.params.u));
        if (out.params.ell < 1) out.params.ell = 1;
        out.params.eps0 = out.params.alpha / (Rational(2) * Rational(out.params.d * out.params.d) *
                                              Rational(out.params.ell * out.params.ell));
        out.params.eps = out.params.eps0 * out.params.eps0 * Rational(out.params.d * out.params.d);
    }
    // the u >= (D^(log2 D) log m)^(1/alpha) relation, with constant 1
    {
        double logd = std::log2((double)out.params.d);
        double lhs = std::pow((double)out.params.d, logd) *
                     std::max(1.0, std::log((double)lc.sigma_b));
        double threshold = std::pow(lhs, 1.0 / out.params.alpha.to_double());
        out.params.u_relation_ok = (double)out.params.u >= threshold;
        if (!out.params.u_relation_ok)
            out.notes.push_back("u below the (D^O(log D) log m)^(1/alpha) relation (flagged only)");
    }

    out.disperser = build_disperser(q, (int)d, out.params.eps0, seed, vh);
    out.reduced = agreement_reduction(lc, out.disperser);
    out.partitions = build_partition_system((int)out.params.u, lc.sigma_b, (int)d, seed + 1);
    out.sc = lc_to_set_cover(out.reduced, out.partitions);

    out.n_elements = (int64_t)out.sc.universe_size;
    out.m_sets = (int64_t)out.sc.sets.size();
    out.n_formula_ok = out.n_elements == (int64_t)out.reduced.b_count * out.params.u;
    out.coverable = !validate(out.sc).has("coverability");

    if (opt.run_audits) {
        try {
            auto check = verify_partition_system(out.partitions, (int)out.params.ell,
                                                 opt.audit_budget);
            out.partition_system_ok = check.pass;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::BudgetExceeded) throw;
            out.notes.push_back("partition-system verification skipped: over budget");
        }
        if (out.disperser.q <= 8) {
            auto check = verify_disperser(out.disperser, out.params.eps0);
            out.disperser_ok = check.pass;
        } else {
            auto check = verify_disperser(out.disperser, out.params.eps0, seed + 2);
            out.disperser_ok = check.pass;
            out.notes.push_back("disperser property spot-checked (sampled partitions)");
        }
        try {
            auto m = measure_agreement_soundness(out.reduced, (int)out.params.ell,
                                                 opt.audit_budget);
            out.measured_la_soundness = m.value;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::BudgetExceeded) throw;
            out.notes.push_back("list-agreement measurement skipped: over budget");
        }
    }
    return out;
}

}  // namespace coverbench
