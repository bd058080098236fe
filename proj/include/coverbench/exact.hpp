#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "coverbench/errors.hpp"
#include "coverbench/instances.hpp"
#include "coverbench/rational.hpp"

namespace coverbench {

// Exact oracles: shortest directed paths, the directed Dreyfus-Wagner subset
// DP (the subroutine the approximation algorithm leans on), and brute-force
// optima for Set-Cover and DST used to audit everything else.

// ============================================================================
// All-pairs shortest directed paths
// ============================================================================

struct DistanceMatrix {
    int n = 0;
    // dist[s][v]: nullopt means unreachable.
    std::vector<std::vector<std::optional<Rational>>> dist;
    // parent_arc[s][v]: index into instance arcs of the last arc on the
    // shortest s->v path; -1 at v == s or unreachable v.
    std::vector<std::vector<int>> parent_arc;
};

// Dijkstra from every source. Deterministic: the queue orders by (cost,
// vertex id) and relaxations are strict, so equal-cost ties keep the first
// settled predecessor.
inline DistanceMatrix all_pairs_distances(const DstInstance& d) {
    DistanceMatrix m;
    m.n = d.vertex_count;
    m.dist.assign(m.n, std::vector<std::optional<Rational>>(m.n));
    m.parent_arc.assign(m.n, std::vector<int>(m.n, -1));
    auto adj = out_adjacency(d);
    for (int s = 0; s < m.n; ++s) {
        auto& dist = m.dist[s];
        auto& par = m.parent_arc[s];
        dist[s] = Rational(0);
        using Entry = std::pair<Rational, int>;
        auto cmp = [](const Entry& a, const Entry& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second > b.second;
        };
        std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> pq(cmp);
        pq.push({Rational(0), s});
        std::vector<bool> done(m.n, false);
        while (!pq.empty()) {
            auto [cost, v] = pq.top();
            pq.pop();
            if (done[v]) continue;
            done[v] = true;
            for (int ai : adj[v]) {
                const auto& arc = d.arcs[ai];
                Rational cand = cost + arc.cost;
                if (!dist[arc.head] || cand < *dist[arc.head]) {
                    dist[arc.head] = cand;
                    par[arc.head] = ai;
                    pq.push({cand, arc.head});
                }
            }
        }
    }
    return m;
}

inline std::vector<int> shortest_path_arcs(const DstInstance& d, const DistanceMatrix& m,
                                           int s, int v) {
    std::vector<int> out;
    int cur = v;
    while (cur != s) {
        int ai = m.parent_arc[s][cur];
        if (ai < 0) return {};
        out.push_back(ai);
        cur = d.arcs[ai].tail;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

// ============================================================================
// Pruning a subgraph down to an arborescence
// ============================================================================

// Builds an arborescence rooted at `root` inside the subgraph spanned by
// `arc_ids`, then sheds every branch that carries no vertex of `required`.
// The result costs at most the (deduplicated) subgraph, since it keeps at
// most one in-arc per vertex. Throws UnreachableTerminal if some required
// vertex cannot be reached inside the subgraph.
inline ArborescenceSolution arborify(const DstInstance& d, std::vector<int> arc_ids, int root,
                                     const std::vector<int>& required) {
    std::sort(arc_ids.begin(), arc_ids.end());
    arc_ids.erase(std::unique(arc_ids.begin(), arc_ids.end()), arc_ids.end());

    // Shortest-path arborescence of the subgraph from the root.
    std::vector<std::vector<int>> adj(d.vertex_count);
    for (int ai : arc_ids) adj[d.arcs[ai].tail].push_back(ai);
    std::vector<std::optional<Rational>> dist(d.vertex_count);
    std::vector<int> par(d.vertex_count, -1);
    dist[root] = Rational(0);
    using Entry = std::pair<Rational, int>;
    auto cmp = [](const Entry& a, const Entry& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> pq(cmp);
    pq.push({Rational(0), root});
    std::vector<bool> done(d.vertex_count, false);
    while (!pq.empty()) {
        auto [cost, v] = pq.top();
        pq.pop();
        if (done[v]) continue;
        done[v] = true;
        for (int ai : adj[v]) {
            const auto& arc = d.arcs[ai];
            Rational cand = cost + arc.cost;
            if (!dist[arc.head] || cand < *dist[arc.head]) {
                dist[arc.head] = cand;
                par[arc.head] = ai;
                pq.push({cand, arc.head});
            }
        }
    }
    for (int v : required)
        if (v != root && !dist[v])
            fail(ErrorCode::UnreachableTerminal,
                 "vertex " + std::to_string(v) + " not reachable inside assembled subgraph");

    // Keep only arcs on root->required paths.
    std::vector<bool> keep(d.vertex_count, false);
    for (int v : required) {
        int cur = v;
        while (cur != root && !keep[cur]) {
            keep[cur] = true;
            cur = d.arcs[par[cur]].tail;
        }
    }
    ArborescenceSolution sol;
    for (int v = 0; v < d.vertex_count; ++v) {
        if (!keep[v] || v == root) continue;
        sol.arcs.push_back(d.arcs[par[v]]);
        sol.cost += d.arcs[par[v]].cost;
    }
    std::sort(sol.arcs.begin(), sol.arcs.end(), [](const auto& a, const auto& b) {
        return std::make_pair(a.tail, a.head) < std::make_pair(b.tail, b.head);
    });
    return sol;
}

// ============================================================================
// Directed Dreyfus-Wagner DP
// ============================================================================

// cost[v][S] tables over subsets of a fixed terminal list, with reconstruction
// annotations. Recurrences:
//   (merge)  cost[v][S] <= cost[v][S1] + cost[v][S \ S1]
//   (extend) cost[v][S] <= dist(v,w) + cost[w][S]
// computed per popcount layer: merge first, then one min-plus extension pass
// over the full distance matrix (which closes the extend relaxation exactly).
struct SteinerDpTable {
    // kind: 0 unset/infinite, 1 singleton (via = terminal vertex),
    //       2 extend+merge (via = intermediate vertex, sub = split at via).
    struct Cell {
        int64_t num = 0;
        int64_t den = 0;  // 0 marks infinity
        uint32_t sub = 0;
        int32_t via = -1;
        uint8_t kind = 0;
    };

    const DstInstance* inst = nullptr;
    std::vector<int> terms;  // terminal vertex per bit
    int cap = 0;             // largest subset size filled in
    DistanceMatrix dist;
    std::vector<Cell> cells;  // v * 2^|terms| + mask

    std::optional<Rational> cost(int v, uint32_t mask) const {
        const Cell& c = cells[((size_t)v << terms.size()) + mask];
        if (c.den == 0) return std::nullopt;
        return Rational(c.num, c.den);
    }

    const Cell& cell(int v, uint32_t mask) const {
        return cells[((size_t)v << terms.size()) + mask];
    }

    Cell& cell_mut(int v, uint32_t mask) { return cells[((size_t)v << terms.size()) + mask]; }

    static void set_cost(Cell& c, const Rational& r) {
        c.num = r.num();
        c.den = r.den();
    }
};

inline SteinerDpTable build_steiner_table(const DstInstance& d, const std::vector<int>& terms,
                                          int cap, const DistanceMatrix* dist = nullptr) {
    int k = (int)terms.size();
    if (k > 20)
        fail(ErrorCode::BudgetExceeded,
             "terminal subset width " + std::to_string(k) + " exceeds bitmask cap 20");
    size_t cell_count = (size_t)d.vertex_count << k;
    if (cell_count > (size_t(1) << 27))
        fail(ErrorCode::BudgetExceeded, "Steiner DP table would exceed the memory budget");
    SteinerDpTable t;
    t.inst = &d;
    t.terms = terms;
    t.cap = std::min(cap, k);
    t.dist = dist ? *dist : all_pairs_distances(d);
    t.cells.assign(cell_count, {});

    int n = d.vertex_count;
    // Singletons: cost[v][{i}] = dist(v, terms[i]).
    for (int i = 0; i < k; ++i) {
        for (int v = 0; v < n; ++v) {
            auto dv = t.dist.dist[v][terms[i]];
            if (!dv) continue;
            auto& c = t.cell_mut(v, 1u << i);
            t.set_cost(c, *dv);
            c.kind = 1;
            c.via = terms[i];
        }
    }

    // Masks sorted by popcount so merges see completed layers.
    std::vector<std::vector<uint32_t>> by_pop(t.cap + 1);
    for (uint32_t mask = 1; mask < (1u << k); ++mask) {
        int p = __builtin_popcount(mask);
        if (p >= 2 && p <= t.cap) by_pop[p].push_back(mask);
    }
    std::vector<std::optional<Rational>> merged(n);
    std::vector<uint32_t> merged_sub(n);
    for (int p = 2; p <= t.cap; ++p) {
        for (uint32_t mask : by_pop[p]) {
            uint32_t low = mask & (~mask + 1);
            for (int v = 0; v < n; ++v) {
                merged[v].reset();
                merged_sub[v] = 0;
            }
            for (uint32_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
                if (!(sub & low)) continue;  // pin lowest bit to visit each split once
                uint32_t rest = mask ^ sub;
                for (int v = 0; v < n; ++v) {
                    auto a = t.cost(v, sub);
                    if (!a) continue;
                    auto b = t.cost(v, rest);
                    if (!b) continue;
                    Rational sum = *a + *b;
                    if (!merged[v] || sum < *merged[v]) {
                        merged[v] = sum;
                        merged_sub[v] = sub;
                    }
                }
            }
            // Min-plus extension over the distance matrix.
            for (int v = 0; v < n; ++v) {
                std::optional<Rational> best;
                int best_w = -1;
                for (int w = 0; w < n; ++w) {
                    if (!merged[w]) continue;
                    auto dvw = t.dist.dist[v][w];
                    if (!dvw) continue;
                    Rational cand = *dvw + *merged[w];
                    if (!best || cand < *best) {
                        best = cand;
                        best_w = w;
                    }
                }
                if (best) {
                    auto& c = t.cell_mut(v, mask);
                    t.set_cost(c, *best);
                    c.kind = 2;
                    c.via = best_w;
                    c.sub = merged_sub[best_w];
                }
            }
        }
    }
    return t;
}

// Arc ids (into the instance) of a tree realizing cost(root, mask).
inline std::vector<int> reconstruct_tree_arcs(const SteinerDpTable& t, int root, uint32_t mask) {
    std::vector<int> out;
    std::vector<std::pair<int, uint32_t>> stack{{root, mask}};
    while (!stack.empty()) {
        auto [v, s] = stack.back();
        stack.pop_back();
        if (s == 0) continue;
        const auto& c = t.cell(v, s);
        if (c.kind == 0) fail(ErrorCode::UnreachableTerminal, "reconstruction hit an unset cell");
        if (c.kind == 1) {
            auto path = shortest_path_arcs(*t.inst, t.dist, v, c.via);
            out.insert(out.end(), path.begin(), path.end());
        } else {
            auto path = shortest_path_arcs(*t.inst, t.dist, v, c.via);
            out.insert(out.end(), path.begin(), path.end());
            stack.push_back({c.via, c.sub});
            stack.push_back({c.via, s ^ c.sub});
        }
    }
    return out;
}

// Minimum-cost arborescence rooted at `root` containing every vertex of F.
inline ArborescenceSolution dreyfus_wagner_directed(const DstInstance& d, int root,
                                                    const std::vector<int>& terminal_subset,
                                                    const DistanceMatrix* dist = nullptr) {
    std::vector<int> terms = terminal_subset;
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    if (terms.empty()) return {};
    SteinerDpTable t = build_steiner_table(d, terms, (int)terms.size(), dist);
    for (size_t i = 0; i < terms.size(); ++i)
        if (!t.dist.dist[root][terms[i]])
            fail(ErrorCode::UnreachableTerminal,
                 "terminal " + std::to_string(terms[i]) + " unreachable from root " +
                     std::to_string(root));
    uint32_t full = (uint32_t)((1ull << terms.size()) - 1);
    auto dp_cost = t.cost(root, full);
    if (!dp_cost)
        fail(ErrorCode::UnreachableTerminal, "DP found no tree over the requested subset");
    auto arcs = reconstruct_tree_arcs(t, root, full);
    std::vector<int> required = terms;
    required.push_back(root);
    ArborescenceSolution sol = arborify(d, arcs, root, required);
    // The pruned tree can only shed cost; at an exact optimum it matches.
    if (*dp_cost < sol.cost)
        fail(ErrorCode::BadParameters, "DP reconstruction exceeded its own bound");
    return sol;
}

// Cheapest T(s, F) over candidate roots s in S; returns the winning root.
inline std::pair<int, ArborescenceSolution> min_cost_tree_from_set(
    const DstInstance& d, const std::vector<int>& root_candidates,
    const std::vector<int>& terminal_subset) {
    std::optional<Rational> best;
    int best_root = -1;
    ArborescenceSolution best_sol;
    std::vector<int> roots = root_candidates;
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    for (int s : roots) {
        try {
            ArborescenceSolution sol = dreyfus_wagner_directed(d, s, terminal_subset);
            if (!best || sol.cost < *best) {
                best = sol.cost;
                best_root = s;
                best_sol = std::move(sol);
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::UnreachableTerminal) throw;
        }
    }
    if (best_root < 0)
        fail(ErrorCode::NoFeasibleRoot, "no candidate root reaches the whole terminal subset");
    return {best_root, std::move(best_sol)};
}

// ============================================================================
// Brute-force oracles
// ============================================================================

// Exact minimum-cost cover by branching on the lowest uncovered element,
// pruning on the incumbent. Deterministic: candidate sets are tried in index
// order and only strict improvements replace the incumbent.
inline CoverSolution brute_force_set_cover(const SetCoverInstance& sc, int max_sets = 24) {
    int m = (int)sc.sets.size();
    if (m > max_sets)
        fail(ErrorCode::BudgetExceeded,
             "instance has " + std::to_string(m) + " sets, brute-force cap is " +
                 std::to_string(max_sets));
    if (sc.universe_size == 0) return {};
    if (sc.universe_size > 128)
        fail(ErrorCode::BudgetExceeded, "brute-force cover supports universes up to 128");
    auto base = validate(sc);
    if (base.has("coverability"))
        fail(ErrorCode::UncoverableInstance, "some element belongs to no set");

    std::vector<std::vector<int>> covering(sc.universe_size);
    for (int j = 0; j < m; ++j)
        for (int e : sc.sets[j].members) covering[e].push_back(j);

    std::vector<uint64_t> set_mask_lo(m, 0), set_mask_hi(m, 0);
    for (int j = 0; j < m; ++j)
        for (int e : sc.sets[j].members) {
            if (e < 64) set_mask_lo[j] |= 1ull << e;
            else set_mask_hi[j] |= 1ull << (e - 64);
        }
    uint64_t full_lo = sc.universe_size >= 64 ? ~0ull : (1ull << sc.universe_size) - 1;
    uint64_t full_hi =
        sc.universe_size <= 64 ? 0 : (sc.universe_size == 128 ? ~0ull
                                                              : (1ull << (sc.universe_size - 64)) - 1);

    std::optional<Rational> best;
    std::vector<int> best_chosen;
    std::vector<int> chosen;
    auto dfs = [&](auto&& self, uint64_t cov_lo, uint64_t cov_hi, const Rational& cost) -> void {
        if (best && !(cost < *best)) return;
        if (cov_lo == full_lo && cov_hi == full_hi) {
            best = cost;
            best_chosen = chosen;
            return;
        }
        int e = -1;
        uint64_t miss_lo = full_lo & ~cov_lo;
        if (miss_lo) e = __builtin_ctzll(miss_lo);
        else e = 64 + __builtin_ctzll(full_hi & ~cov_hi);
        for (int j : covering[e]) {
            chosen.push_back(j);
            self(self, cov_lo | set_mask_lo[j], cov_hi | set_mask_hi[j], cost + sc.sets[j].cost);
            chosen.pop_back();
        }
    };
    dfs(dfs, 0, 0, Rational(0));

    CoverSolution sol;
    sol.chosen = best_chosen;
    std::sort(sol.chosen.begin(), sol.chosen.end());
    for (int j : sol.chosen) sol.cost += sc.sets[j].cost;
    return sol;
}

// Exact DST optimum by enumerating arc subsets and keeping the cheapest valid
// arborescence that covers the terminals. Ascending mask order makes ties
// deterministic.
inline ArborescenceSolution brute_force_dst(const DstInstance& d, int max_arcs = 20) {
    int m = (int)d.arcs.size();
    if (m > max_arcs || m > 30)
        fail(ErrorCode::BudgetExceeded,
             "instance has " + std::to_string(m) + " arcs, brute-force cap is " +
                 std::to_string(std::min(max_arcs, 30)));
    auto rep = validate(d);
    if (rep.has("reachability"))
        fail(ErrorCode::UnreachableTerminal, "some terminal is unreachable from the root");
    if (d.terminals.empty()) return {};

    std::optional<Rational> best;
    uint32_t best_mask = 0;
    std::vector<int> parent(d.vertex_count);
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        // in-degree <= 1, no arc into the root
        std::fill(parent.begin(), parent.end(), -1);
        bool ok = true;
        for (uint32_t bits = mask; bits && ok;) {
            int ai = __builtin_ctz(bits);
            bits &= bits - 1;
            const auto& a = d.arcs[ai];
            if (a.head == d.root || parent[a.head] != -1) ok = false;
            else parent[a.head] = a.tail;
        }
        if (!ok) continue;
        // connectivity from the root (also rules out cycles)
        for (int v = 0; v < d.vertex_count && ok; ++v) {
            if (parent[v] == -1) continue;
            int cur = v, hops = 0;
            while (cur != d.root) {
                if (parent[cur] == -1 || ++hops > d.vertex_count) {
                    ok = false;
                    break;
                }
                cur = parent[cur];
            }
        }
        if (!ok) continue;
        bool covers = true;
        for (int t : d.terminals)
            if (t != d.root && parent[t] == -1) {
                covers = false;
                break;
            }
        if (!covers) continue;
        Rational cost;
        for (uint32_t bits = mask; bits;) {
            int ai = __builtin_ctz(bits);
            bits &= bits - 1;
            cost += d.arcs[ai].cost;
        }
        if (!best || cost < *best) {
            best = cost;
            best_mask = mask;
        }
    }
    if (!best) fail(ErrorCode::UnreachableTerminal, "no arborescence covers the terminals");
    ArborescenceSolution sol;
    sol.cost = *best;
    for (uint32_t bits = best_mask; bits;) {
        int ai = __builtin_ctz(bits);
        bits &= bits - 1;
        sol.arcs.push_back(d.arcs[ai]);
    }
    return sol;
}

}  // namespace coverbench
