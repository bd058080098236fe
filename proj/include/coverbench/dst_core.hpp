#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "coverbench/errors.hpp"
#include "coverbench/exact.hpp"
#include "coverbench/greedy.hpp"
#include "coverbench/instances.hpp"
#include "coverbench/numeric.hpp"
#include "coverbench/rational.hpp"

namespace coverbench {

// The phi-core machinery: core extraction from a tree, the phi-bounded
// induced Set-Cover view, min-density subtree search, candidate-core
// enumeration and solution assembly.

// ============================================================================
// Phi-cores
// ============================================================================

struct PhiCore {
    struct Piece {
        int root = -1;
        std::vector<DstInstance::Arc> arcs;  // subtree of the host tree
        std::vector<int> terminals;          // ascending
    };
    std::vector<int> vertices;  // ascending
    int phi = 1;
    std::vector<Piece> witness;
};

namespace detail {

struct TreeView {
    int root = -1;
    std::vector<int> parent;                  // -1 outside the tree / at root
    std::vector<int> parent_arc;              // index into tree arcs
    std::vector<std::vector<int>> children;
    std::vector<bool> in_tree;
    std::vector<bool> is_terminal;
};

inline TreeView build_tree_view(const DstInstance& d, const ArborescenceSolution& t) {
    TreeView v;
    v.root = d.root;
    v.parent.assign(d.vertex_count, -1);
    v.parent_arc.assign(d.vertex_count, -1);
    v.children.assign(d.vertex_count, {});
    v.in_tree.assign(d.vertex_count, false);
    v.is_terminal.assign(d.vertex_count, false);
    v.in_tree[d.root] = true;
    for (int i = 0; i < (int)t.arcs.size(); ++i) {
        const auto& a = t.arcs[i];
        if (v.parent[a.head] != -1 || a.head == d.root)
            fail(ErrorCode::BadParameters, "input is not an arborescence");
        v.parent[a.head] = a.tail;
        v.parent_arc[a.head] = i;
        v.children[a.tail].push_back(a.head);
        v.in_tree[a.head] = true;
        v.in_tree[a.tail] = true;
    }
    for (int t_id : d.terminals)
        if (v.in_tree[t_id]) v.is_terminal[t_id] = true;
    return v;
}

}  // namespace detail

// Constructive core extraction following the inductive argument: repeatedly
// take a deepest vertex whose subtree holds more than phi terminals while
// every child subtree holds at most phi, carve that subtree off as one piece
// per child, and finish with the root once at most phi terminals remain.
// The returned witness decomposition satisfies |C| <= ceil(l(T)/phi).
inline PhiCore find_phi_core(const DstInstance& d, const ArborescenceSolution& t, int phi) {
    if (phi < 1) fail(ErrorCode::BadParameters, "phi must be >= 1");
    auto view = detail::build_tree_view(d, t);
    int n = d.vertex_count;
    std::vector<bool> alive = view.in_tree;
    std::vector<bool> term_alive = view.is_terminal;

    int total_terminals = 0;
    for (int v = 0; v < n; ++v)
        if (term_alive[v]) ++total_terminals;
    if (total_terminals < 1) fail(ErrorCode::BadParameters, "tree contains no terminal");

    PhiCore core;
    core.phi = phi;

    auto subtree_counts = [&](std::vector<int>& cnt) {
        cnt.assign(n, 0);
        // children-before-parent order via DFS post-order from the root
        std::vector<std::pair<int, size_t>> stack{{view.root, 0}};
        while (!stack.empty()) {
            auto& [v, idx] = stack.back();
            // skip dead children
            while (idx < view.children[v].size() && !alive[view.children[v][idx]]) ++idx;
            if (idx < view.children[v].size()) {
                int w = view.children[v][idx++];
                stack.push_back({w, 0});
                continue;
            }
            cnt[v] = term_alive[v] ? 1 : 0;
            for (int w : view.children[v])
                if (alive[w]) cnt[v] += cnt[w];
            stack.pop_back();
        }
    };

    auto collect_piece = [&](int piece_root, int top_child) {
        PhiCore::Piece piece;
        piece.root = piece_root;
        std::vector<int> stack{top_child};
        piece.arcs.push_back(t.arcs[view.parent_arc[top_child]]);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (term_alive[v]) piece.terminals.push_back(v);
            for (int w : view.children[v]) {
                if (!alive[w]) continue;
                piece.arcs.push_back(t.arcs[view.parent_arc[w]]);
                stack.push_back(w);
            }
        }
        std::sort(piece.terminals.begin(), piece.terminals.end());
        return piece;
    };

    auto carve_at = [&](int v, std::vector<int>& cnt) {
        core.vertices.push_back(v);
        if (term_alive[v]) {
            // a terminal core vertex covers itself with a trivial piece
            PhiCore::Piece self;
            self.root = v;
            self.terminals = {v};
            core.witness.push_back(std::move(self));
        }
        for (int w : view.children[v]) {
            if (!alive[w] || cnt[w] == 0) continue;
            core.witness.push_back(collect_piece(v, w));
        }
        // remove the whole subtree
        std::vector<int> stack{v};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            alive[x] = false;
            term_alive[x] = false;
            for (int w : view.children[x])
                if (alive[w]) stack.push_back(w);
        }
    };

    std::vector<int> cnt;
    for (;;) {
        subtree_counts(cnt);
        if (cnt[view.root] <= phi) break;
        // deepest vertex with cnt > phi whose alive children all have cnt <= phi;
        // scanning in DFS post-order returns the first such vertex deterministically
        int pick = -1;
        std::vector<std::pair<int, size_t>> stack{{view.root, 0}};
        while (!stack.empty() && pick < 0) {
            auto& [v, idx] = stack.back();
            while (idx < view.children[v].size() &&
                   (!alive[view.children[v][idx]] || cnt[view.children[v][idx]] == 0))
                ++idx;
            if (idx < view.children[v].size()) {
                int w = view.children[v][idx++];
                stack.push_back({w, 0});
                continue;
            }
            if (cnt[v] > phi) pick = v;  // children all <= phi by post-order
            stack.pop_back();
        }
        carve_at(pick, cnt);
    }
    if (cnt[view.root] >= 1) carve_at(view.root, cnt);

    std::sort(core.vertices.begin(), core.vertices.end());
    return core;
}

// Witness checker used by the property tests and the CLI verifier.
inline ValidationReport verify_phi_core(const DstInstance& d, const ArborescenceSolution& t,
                                        const PhiCore& core) {
    ValidationReport r;
    auto view = detail::build_tree_view(d, t);
    int total_terminals = 0;
    for (int v = 0; v < d.vertex_count; ++v)
        if (view.is_terminal[v]) ++total_terminals;

    auto in_core = [&](int v) {
        return std::binary_search(core.vertices.begin(), core.vertices.end(), v);
    };
    std::map<std::pair<int, int>, Rational> tree_arcs;
    for (const auto& a : t.arcs) tree_arcs[{a.tail, a.head}] = a.cost;

    std::map<std::pair<int, int>, int> used_edges;
    std::vector<int> covered(d.vertex_count, 0);
    for (const auto& piece : core.witness) {
        if (!in_core(piece.root)) r.flag("piece-root-in-core");
        if ((int)piece.terminals.size() > core.phi) r.flag("piece-terminal-cap");
        std::vector<int> parent(d.vertex_count, -1);
        for (const auto& a : piece.arcs) {
            auto it = tree_arcs.find({a.tail, a.head});
            if (it == tree_arcs.end() || !(it->second == a.cost)) r.flag("piece-arc-in-tree");
            if (++used_edges[{a.tail, a.head}] > 1) r.flag("edge-disjoint");
            if (parent[a.head] != -1) r.flag("piece-shape");
            parent[a.head] = a.tail;
        }
        // piece must be connected from its root
        for (const auto& a : piece.arcs) {
            int cur = a.tail, hops = 0;
            while (cur != piece.root && parent[cur] != -1 && hops++ <= d.vertex_count)
                cur = parent[cur];
            if (cur != piece.root) r.flag("piece-shape");
        }
        for (int term : piece.terminals) {
            if (!view.is_terminal[term]) r.flag("piece-terminal-role");
            bool inside = term == piece.root || parent[term] != -1;
            if (!inside) r.flag("piece-terminal-member");
            covered[term]++;
        }
    }
    for (int v = 0; v < d.vertex_count; ++v) {
        if (view.is_terminal[v] && covered[v] != 1) r.flag("terminal-exactly-once");
        if (!view.is_terminal[v] && covered[v] != 0) r.flag("terminal-role");
    }
    int bound = (total_terminals + core.phi - 1) / core.phi;
    if ((int)core.vertices.size() > bound) r.flag("core-size-bound");
    return r;
}

// ============================================================================
// Phi-bounded induced Set-Cover view
// ============================================================================

// Implicit representation of C^phi_{S,U}: subsets Y of the uncovered
// terminals with |Y| <= phi and Y inside R(s) for some root s. Weights come
// from a shared Steiner DP table over the instance terminals, so nothing is
// ever materialized.
struct BoundedCoverView {
    const DstInstance* inst = nullptr;
    const SteinerDpTable* table = nullptr;  // built over inst->terminals, cap >= phi
    std::vector<int> roots;                 // candidate roots S, ascending
    uint32_t uncovered = 0;                 // bit i <-> table->terms[i]
    int phi = 1;
};

inline BoundedCoverView make_bounded_view(const DstInstance& d, const SteinerDpTable& table,
                                          std::vector<int> roots, int phi) {
    BoundedCoverView v;
    v.inst = &d;
    v.table = &table;
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    v.roots = std::move(roots);
    v.phi = phi;
    v.uncovered = (uint32_t)((1ull << table.terms.size()) - 1);
    return v;
}

struct DensityPick {
    uint32_t mask = 0;  // covered terminal bits
    int root = -1;
    ArborescenceSolution tree;
    Rational density;
};

// Minimum-density set of the view: minimizes c(T(s,Y))/|Y| over nonempty
// Y <= phi and s in S, enumerating terminal subsets exactly as in the
// paper's search. Ties resolve by (density, subset mask, root id) ascending.
inline DensityPick min_density_set(const BoundedCoverView& view) {
    if (view.uncovered == 0)
        fail(ErrorCode::BadParameters, "min_density_set on an empty uncovered set");
    const auto& t = *view.table;
    std::optional<Rational> best_density;
    uint32_t best_mask = 0;
    int best_root = -1;
    Rational best_cost;
    for (uint32_t sub = view.uncovered; sub; sub = (sub - 1) & view.uncovered) {
        if (__builtin_popcount(sub) > view.phi) continue;
        std::optional<Rational> cost;
        int root = -1;
        for (int s : view.roots) {
            auto c = t.cost(s, sub);
            if (c && (!cost || *c < *cost)) {
                cost = *c;
                root = s;
            }
        }
        if (!cost) continue;
        Rational density = *cost / Rational(__builtin_popcount(sub));
        if (!best_density || density < *best_density ||
            (density == *best_density && sub < best_mask)) {
            best_density = density;
            best_mask = sub;
            best_root = root;
            best_cost = *cost;
        }
    }
    if (!best_density)
        fail(ErrorCode::NoCoverableTerminal, "no candidate root reaches any uncovered terminal");
    DensityPick pick;
    pick.mask = best_mask;
    pick.root = best_root;
    pick.density = *best_density;
    auto arcs = reconstruct_tree_arcs(t, best_root, best_mask);
    std::vector<int> required{best_root};
    for (int i = 0; i < (int)t.terms.size(); ++i)
        if (best_mask & (1u << i)) required.push_back(t.terms[i]);
    pick.tree = arborify(*view.inst, arcs, best_root, required);
    if (!(pick.tree.cost == best_cost))
        fail(ErrorCode::BadParameters, "density tree reconstruction mismatch");
    return pick;
}

// Greedy cover of the view: repeatedly take the min-density set until every
// terminal is covered. The chosen subsets partition the terminal set.
inline std::vector<DensityPick> greedy_bounded_cover(BoundedCoverView view) {
    std::vector<DensityPick> picks;
    while (view.uncovered != 0) {
        DensityPick pick = min_density_set(view);
        view.uncovered &= ~pick.mask;
        picks.push_back(std::move(pick));
    }
    return picks;
}

// ============================================================================
// Assembly
// ============================================================================

namespace detail {

// Union of backbone and piece arcs, pruned to root->terminal paths.
inline ArborescenceSolution combine_and_prune(const DstInstance& d,
                                              const ArborescenceSolution& backbone,
                                              const std::vector<DensityPick>& pieces) {
    std::map<std::pair<int, int>, int> arc_index;
    for (int i = 0; i < (int)d.arcs.size(); ++i)
        arc_index[{d.arcs[i].tail, d.arcs[i].head}] = i;
    std::vector<int> arc_ids;
    auto add_arcs = [&](const std::vector<DstInstance::Arc>& arcs) {
        for (const auto& a : arcs) arc_ids.push_back(arc_index.at({a.tail, a.head}));
    };
    add_arcs(backbone.arcs);
    for (const auto& p : pieces) add_arcs(p.tree.arcs);
    return arborify(d, std::move(arc_ids), d.root, d.terminals);
}

}  // namespace detail

// Combines T(r,S) with the cover pieces and sheds superfluous arcs. The
// result is a valid arborescence covering all terminals with cost at most
// c(T(r,S)) plus the sum of the piece costs.
inline ArborescenceSolution assemble(const DstInstance& d, const std::vector<int>& core,
                                     const std::vector<DensityPick>& pieces,
                                     const DistanceMatrix* dist = nullptr) {
    std::vector<int> s_terms;
    for (int s : core)
        if (s != d.root) s_terms.push_back(s);
    ArborescenceSolution backbone;
    if (!s_terms.empty()) {
        try {
            backbone = dreyfus_wagner_directed(d, d.root, s_terms, dist);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::UnreachableTerminal)
                fail(ErrorCode::UnreachableCoreVertex,
                     "a core vertex is unreachable from the root");
            throw;
        }
    }
    return detail::combine_and_prune(d, backbone, pieces);
}

// ============================================================================
// The main algorithm
// ============================================================================

struct DstApproxOptions {
    bool double_core_cap = false;   // raise |S| cap from ceil(N/phi) to ceil(2N/phi)
    int threads = 1;
    uint64_t candidate_budget = 5'000'000;  // enumeration guard
};

struct DstApproxResult {
    ArborescenceSolution solution;
    int phi = 1;
    int core_cap = 0;
    std::vector<int> best_core;  // includes the root
    Rational ratio_bound;        // 1 + ln(phi), rounded up
    uint64_t candidates = 0;     // candidate cores enumerated
};

namespace detail {

// Candidate evaluation shared by the sequential and threaded paths. Returns
// nullopt when the candidate is infeasible or pruned by the incumbent; the
// pruning keeps the certified bound: whenever a candidate is skipped, the
// incumbent is already <= c(T(r,S)) + the partial greedy sum.
inline std::optional<ArborescenceSolution> evaluate_candidate(
    const DstInstance& d, const SteinerDpTable& table, const std::vector<int>& core, int phi,
    const std::optional<Rational>& incumbent) {
    std::vector<int> s_terms;
    for (int s : core)
        if (s != d.root) s_terms.push_back(s);
    ArborescenceSolution backbone;
    if (!s_terms.empty()) {
        try {
            backbone = dreyfus_wagner_directed(d, d.root, s_terms, &table.dist);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::UnreachableTerminal) return std::nullopt;
            throw;
        }
    }
    if (incumbent && !(backbone.cost < *incumbent)) return std::nullopt;

    BoundedCoverView view = make_bounded_view(d, table, core, phi);
    std::vector<DensityPick> picks;
    Rational bound = backbone.cost;
    while (view.uncovered != 0) {
        DensityPick pick;
        try {
            pick = min_density_set(view);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NoCoverableTerminal) return std::nullopt;
            throw;
        }
        view.uncovered &= ~pick.mask;
        bound += pick.tree.cost;
        if (incumbent && !(bound < *incumbent)) return std::nullopt;
        picks.push_back(std::move(pick));
    }
    return detail::combine_and_prune(d, backbone, picks);
}

}  // namespace detail

// Subexponential DST approximation: phi = max(1, ceil(N^(1-gamma))), candidate
// cores are the subsets of V of size at most the cap (the root is always
// added), each candidate gets a greedy bounded cover, and the cheapest
// assembled tree wins. Guaranteed cost <= (1 + ln phi) * OPT.
inline DstApproxResult dst_approx(const DstInstance& d, const Rational& gamma,
                                  const DstApproxOptions& opt = {}) {
    if (gamma < Rational(1, 2) || !(gamma < Rational(1)))
        fail(ErrorCode::BadParameters, "gamma must lie in [1/2, 1)");
    auto rep = validate(d);
    if (rep.has("reachability"))
        fail(ErrorCode::UnreachableTerminal, "some terminal is unreachable from the root");
    if (!rep.pass) fail(ErrorCode::BadParameters, "invalid instance: " + rep.violations[0]);
    if (!is_leafified(d)) fail(ErrorCode::BadParameters, "instance must be leafified first");
    int big_n = (int)d.terminals.size();
    if (big_n < 1) fail(ErrorCode::BadParameters, "instance needs at least one terminal");

    Rational exponent = Rational(1) - gamma;  // in (0, 1/2]
    int phi = (int)std::max<int64_t>(
        1, ceil_pow_rational(big_n, exponent.num(), exponent.den()));
    phi = std::min(phi, big_n);
    int cap = (big_n + phi - 1) / phi;
    if (opt.double_core_cap) cap = (2 * big_n + phi - 1) / phi;
    cap = std::min(cap, d.vertex_count - 1);

    DstApproxResult result;
    result.phi = phi;
    result.core_cap = cap;
    result.ratio_bound = chvatal_bound(phi);

    uint64_t count = 0;
    for (int k = 0; k <= cap; ++k) count += binomial_capped(d.vertex_count - 1, k, UINT64_MAX);
    if (count > opt.candidate_budget)
        fail(ErrorCode::BudgetExceeded,
             "candidate core enumeration needs " + std::to_string(count) +
                 " subsets; budget is " + std::to_string(opt.candidate_budget));
    result.candidates = count;

    SteinerDpTable table = build_steiner_table(d, d.terminals, phi);

    // Candidate list: subsets of V \ {r} in increasing size, lexicographic.
    std::vector<int> pool;
    for (int v = 0; v < d.vertex_count; ++v)
        if (v != d.root) pool.push_back(v);
    std::vector<std::vector<int>> candidates;
    candidates.reserve(count);
    std::vector<int> combo;
    auto emit = [&](auto&& self, int start, int need) -> void {
        if (need == 0) {
            std::vector<int> core = combo;
            core.push_back(d.root);
            std::sort(core.begin(), core.end());
            candidates.push_back(std::move(core));
            return;
        }
        for (int i = start; i + need <= (int)pool.size(); ++i) {
            combo.push_back(pool[i]);
            self(self, i + 1, need - 1);
            combo.pop_back();
        }
    };
    for (int k = 0; k <= cap; ++k) emit(emit, 0, k);

    struct Best {
        std::optional<Rational> cost;
        ArborescenceSolution sol;
        std::vector<int> core;
    };
    auto run_range = [&](size_t lo, size_t hi, Best& best) {
        for (size_t i = lo; i < hi; ++i) {
            auto sol = detail::evaluate_candidate(d, table, candidates[i], phi, best.cost);
            if (!sol) continue;
            if (!best.cost || sol->cost < *best.cost ||
                (sol->cost == *best.cost && candidates[i] < best.core)) {
                best.cost = sol->cost;
                best.sol = std::move(*sol);
                best.core = candidates[i];
            }
        }
    };

    int threads = std::max(1, opt.threads);
    Best final_best;
    if (threads == 1 || candidates.size() < 64) {
        run_range(0, candidates.size(), final_best);
    } else {
        std::vector<Best> bests(threads);
        std::vector<std::thread> pool_threads;
        size_t chunk = (candidates.size() + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            size_t lo = std::min(candidates.size(), t * chunk);
            size_t hi = std::min(candidates.size(), lo + chunk);
            pool_threads.emplace_back(run_range, lo, hi, std::ref(bests[t]));
        }
        for (auto& th : pool_threads) th.join();
        for (auto& b : bests) {
            if (!b.cost) continue;
            if (!final_best.cost || *b.cost < *final_best.cost ||
                (*b.cost == *final_best.cost && b.core < final_best.core)) {
                final_best = std::move(b);
            }
        }
    }
    if (!final_best.cost)
        fail(ErrorCode::NoCoverableTerminal, "no feasible candidate core found");
    result.solution = std::move(final_best.sol);
    result.best_core = std::move(final_best.core);
    return result;
}

// ============================================================================
// Decomposition audit (the exact-identity check)
// ============================================================================

struct DecompositionAudit {
    bool equality = false;
    Rational opt_cost;      // c(T_opt)
    Rational cover_cost;    // OPT_SC over the bounded view, exhaustively
    Rational backbone_cost; // c(T(r,C))
    std::vector<int> core;
    int phi = 1;
};

// Exhaustive weighted set cover over the implicit bounded view; independent
// of the greedy path (branches on the lowest uncovered terminal).
inline std::optional<Rational> exhaustive_view_cover(const SteinerDpTable& table,
                                                     const std::vector<int>& roots, int phi,
                                                     uint32_t universe) {
    if (universe == 0) return Rational(0);
    auto set_cost = [&](uint32_t mask) -> std::optional<Rational> {
        std::optional<Rational> best;
        for (int s : roots) {
            auto c = table.cost(s, mask);
            if (c && (!best || *c < *best)) best = *c;
        }
        return best;
    };
    std::optional<Rational> best;
    auto dfs = [&](auto&& self, uint32_t uncovered, Rational cost) -> void {
        if (best && !(cost < *best)) return;
        if (uncovered == 0) {
            best = cost;
            return;
        }
        int low = __builtin_ctz(uncovered);
        // all subsets of the uncovered set that contain `low`, size <= phi
        uint32_t rest = uncovered & ~(1u << low);
        std::vector<uint32_t> subs;
        for (uint32_t sub = rest;; sub = (sub - 1) & rest) {
            if (__builtin_popcount(sub) + 1 <= phi) subs.push_back(sub | (1u << low));
            if (sub == 0) break;
        }
        for (uint32_t pick : subs) {
            auto c = set_cost(pick);
            if (!c) continue;
            self(self, uncovered & ~pick, cost + *c);
        }
    };
    dfs(dfs, universe, Rational(0));
    return best;
}

// Checks the exact identity c(T_opt) == OPT_SC(C^phi_{C,X}) + c(T(r,C)).
// The extracted core is the set of "heavy" vertices of T_opt (subtree holds
// more than phi terminals), which makes the heavy edges exactly the r-to-core
// connection and every hanging subtree a piece of at most phi terminals; on
// an optimal tree both sides then coincide. Pass `core_override` to audit a
// caller-chosen core instead.
inline DecompositionAudit decomposition_audit(const DstInstance& d,
                                              const ArborescenceSolution& t_opt, int phi,
                                              std::optional<std::vector<int>> core_override =
                                                  std::nullopt) {
    if (phi < 1) fail(ErrorCode::BadParameters, "phi must be >= 1");
    DecompositionAudit audit;
    audit.phi = phi;
    audit.opt_cost = t_opt.cost;

    std::vector<int> core;
    if (core_override) {
        core = *core_override;
    } else {
        auto view = detail::build_tree_view(d, t_opt);
        std::vector<int> cnt(d.vertex_count, 0);
        std::vector<int> order;  // post-order
        std::vector<std::pair<int, size_t>> stack{{view.root, 0}};
        while (!stack.empty()) {
            auto& [v, idx] = stack.back();
            if (idx < view.children[v].size()) {
                stack.push_back({view.children[v][idx++], 0});
                continue;
            }
            order.push_back(v);
            stack.pop_back();
        }
        for (int v : order) {
            cnt[v] = view.is_terminal[v] ? 1 : 0;
            for (int w : view.children[v]) cnt[v] += cnt[w];
        }
        for (int v = 0; v < d.vertex_count; ++v)
            if (view.in_tree[v] && cnt[v] > phi) core.push_back(v);
        if (core.empty()) core.push_back(d.root);
    }
    std::sort(core.begin(), core.end());
    core.erase(std::unique(core.begin(), core.end()), core.end());
    audit.core = core;

    SteinerDpTable table = build_steiner_table(d, d.terminals, phi);
    auto cover = exhaustive_view_cover(table, core, phi,
                                       (uint32_t)((1ull << d.terminals.size()) - 1));
    if (!cover) fail(ErrorCode::NoCoverableTerminal, "core cannot cover the terminals");
    audit.cover_cost = *cover;

    std::vector<int> s_terms;
    for (int s : core)
        if (s != d.root) s_terms.push_back(s);
    if (!s_terms.empty())
        audit.backbone_cost = dreyfus_wagner_directed(d, d.root, s_terms, &table.dist).cost;
    audit.equality = audit.opt_cost == audit.cover_cost + audit.backbone_cost;
    return audit;
}

}  // namespace coverbench
