#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coverbench/errors.hpp"
#include "coverbench/rational.hpp"

namespace coverbench {

// Data model for the three problem families. All ids are dense and 0-based
// (bitmask DPs and adjacency arrays index with them directly). Instances are
// immutable once built: every transform returns a fresh value, so instances
// can be shared across threads without synchronization.

// ============================================================================
// Types
// ============================================================================

struct SetCoverInstance {
    struct Set {
        Rational cost;
        std::vector<int> members;  // sorted, duplicate-free, in [0, universe_size)
    };
    int universe_size = 0;
    std::vector<Set> sets;
};

struct DstInstance {
    struct Arc {
        int tail = 0;
        int head = 0;
        Rational cost;
    };
    int vertex_count = 0;
    std::vector<Arc> arcs;       // simple: no self-loops, parallels collapsed
    int root = 0;
    std::vector<int> terminals;  // sorted, duplicate-free
};

struct LabelCoverInstance {
    struct Edge {
        int a = 0;
        int b = 0;
        int b_slot = 0;  // position of this edge among b's incoming edges, 0-based
    };
    int a_count = 0;
    int b_count = 0;
    int sigma_a = 0;  // |Sigma_A|
    int sigma_b = 0;  // |Sigma_B|
    std::vector<Edge> edges;
    // projections[i][sym_a] = sym_b for edges[i]
    std::vector<std::vector<int>> projections;
    bool bi_regular = false;
    int a_degree = 0;  // meaningful when bi_regular
    int b_degree = 0;
};

struct Labeling {
    std::vector<int> phi_a;  // symbol per A-vertex
    std::vector<int> phi_b;  // symbol per B-vertex
};

struct ListLabeling {
    std::vector<std::vector<int>> phi_a;  // <= list_bound symbols per A-vertex
    int list_bound = 1;
};

struct CoverSolution {
    std::vector<int> chosen;  // set indices
    Rational cost;
};

struct ArborescenceSolution {
    std::vector<DstInstance::Arc> arcs;
    Rational cost;
};

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> violations;  // stable tokens, e.g. "coverability"

    void flag(const std::string& token) {
        pass = false;
        violations.push_back(token);
    }
    bool has(const std::string& token) const {
        return std::find(violations.begin(), violations.end(), token) != violations.end();
    }
};

// ============================================================================
// Construction helpers
// ============================================================================

// Drops self-loops and collapses parallel arcs to the cheapest (ties keep one).
inline std::vector<DstInstance::Arc> normalize_arcs(std::vector<DstInstance::Arc> arcs) {
    std::map<std::pair<int, int>, Rational> best;
    for (const auto& a : arcs) {
        if (a.tail == a.head) continue;
        auto key = std::make_pair(a.tail, a.head);
        auto it = best.find(key);
        if (it == best.end() || a.cost < it->second) best[key] = a.cost;
    }
    std::vector<DstInstance::Arc> out;
    out.reserve(best.size());
    for (const auto& [key, cost] : best) out.push_back({key.first, key.second, cost});
    return out;
}

inline DstInstance make_dst(int vertex_count, std::vector<DstInstance::Arc> arcs, int root,
                            std::vector<int> terminals) {
    DstInstance d;
    d.vertex_count = vertex_count;
    d.arcs = normalize_arcs(std::move(arcs));
    d.root = root;
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    d.terminals = std::move(terminals);
    return d;
}

inline std::vector<std::vector<int>> out_adjacency(const DstInstance& d) {
    std::vector<std::vector<int>> adj(d.vertex_count);
    for (int i = 0; i < (int)d.arcs.size(); ++i) adj[d.arcs[i].tail].push_back(i);
    return adj;
}

// R(v) as a reachability bitmap over vertices.
inline std::vector<bool> reachable_from(const DstInstance& d, int start) {
    std::vector<bool> seen(d.vertex_count, false);
    if (start < 0 || start >= d.vertex_count) return seen;
    auto adj = out_adjacency(d);
    std::vector<int> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int ai : adj[v]) {
            int w = d.arcs[ai].head;
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

// ============================================================================
// Validation (reports, never throws)
// ============================================================================

inline ValidationReport validate(const SetCoverInstance& sc) {
    ValidationReport r;
    if (sc.universe_size < 0) r.flag("universe-size");
    std::vector<bool> covered(std::max(0, sc.universe_size), false);
    for (const auto& s : sc.sets) {
        if (s.cost.is_negative()) r.flag("negative-cost");
        for (size_t i = 0; i < s.members.size(); ++i) {
            int e = s.members[i];
            if (e < 0 || e >= sc.universe_size) {
                r.flag("member-range");
                continue;
            }
            covered[e] = true;
            if (i > 0 && s.members[i] <= s.members[i - 1]) r.flag("members-sorted");
        }
    }
    for (int e = 0; e < sc.universe_size; ++e)
        if (!covered[e]) {
            r.flag("coverability");
            break;
        }
    return r;
}

inline ValidationReport validate(const DstInstance& d) {
    ValidationReport r;
    if (d.vertex_count <= 0) r.flag("vertex-count");
    if (d.root < 0 || d.root >= d.vertex_count) r.flag("root-range");
    std::map<std::pair<int, int>, int> seen_arc;
    for (const auto& a : d.arcs) {
        if (a.tail < 0 || a.tail >= d.vertex_count || a.head < 0 || a.head >= d.vertex_count) {
            r.flag("arc-range");
            continue;
        }
        if (a.tail == a.head) r.flag("self-loop");
        if (a.cost.is_negative()) r.flag("negative-cost");
        if (++seen_arc[{a.tail, a.head}] > 1) r.flag("parallel-arcs");
    }
    bool ids_ok = true;
    for (size_t i = 0; i < d.terminals.size(); ++i) {
        int t = d.terminals[i];
        if (t < 0 || t >= d.vertex_count) {
            r.flag("terminal-range");
            ids_ok = false;
        }
        if (i > 0 && d.terminals[i] <= d.terminals[i - 1]) r.flag("terminals-sorted");
    }
    if (ids_ok && d.root >= 0 && d.root < d.vertex_count) {
        auto reach = reachable_from(d, d.root);
        for (int t : d.terminals)
            if (!reach[t]) {
                r.flag("reachability");
                break;
            }
    }
    return r;
}

// True when every terminal has out-degree 0.
inline bool is_leafified(const DstInstance& d) {
    std::vector<int> outdeg(d.vertex_count, 0);
    for (const auto& a : d.arcs) outdeg[a.tail]++;
    for (int t : d.terminals)
        if (t >= 0 && t < d.vertex_count && outdeg[t] > 0) return false;
    return true;
}

inline ValidationReport validate(const LabelCoverInstance& lc) {
    ValidationReport r;
    if (lc.a_count <= 0 || lc.b_count <= 0) r.flag("vertex-count");
    if (lc.sigma_a <= 0 || lc.sigma_b <= 0) r.flag("alphabet-size");
    if (lc.projections.size() != lc.edges.size()) r.flag("projection-count");
    std::vector<int> a_deg(std::max(0, lc.a_count), 0), b_deg(std::max(0, lc.b_count), 0);
    std::map<std::pair<int, int>, int> seen_edge;
    std::map<std::pair<int, int>, int> seen_slot;
    for (size_t i = 0; i < lc.edges.size(); ++i) {
        const auto& e = lc.edges[i];
        if (e.a < 0 || e.a >= lc.a_count || e.b < 0 || e.b >= lc.b_count) {
            r.flag("edge-range");
            continue;
        }
        a_deg[e.a]++;
        b_deg[e.b]++;
        if (++seen_edge[{e.a, e.b}] > 1) r.flag("duplicate-edge");
        if (++seen_slot[{e.b, e.b_slot}] > 1) r.flag("slot-collision");
        if (i < lc.projections.size()) {
            const auto& pi = lc.projections[i];
            if ((int)pi.size() != lc.sigma_a) r.flag("projection-arity");
            for (int sym : pi)
                if (sym < 0 || sym >= lc.sigma_b) {
                    r.flag("projection-range");
                    break;
                }
        }
    }
    for (size_t i = 0; i < lc.edges.size(); ++i) {
        const auto& e = lc.edges[i];
        if (e.b >= 0 && e.b < lc.b_count && (e.b_slot < 0 || e.b_slot >= b_deg[e.b]))
            r.flag("slot-range");
    }
    if (lc.bi_regular) {
        for (int v = 0; v < lc.a_count; ++v)
            if (a_deg[v] != lc.a_degree) {
                r.flag("a-regularity");
                break;
            }
        for (int v = 0; v < lc.b_count; ++v)
            if (b_deg[v] != lc.b_degree) {
                r.flag("b-regularity");
                break;
            }
        if ((long long)lc.edges.size() != (long long)lc.a_count * lc.a_degree ||
            (long long)lc.edges.size() != (long long)lc.b_count * lc.b_degree)
            r.flag("edge-count-identity");
    }
    return r;
}

inline ValidationReport validate(const LabelCoverInstance& lc, const Labeling& phi) {
    ValidationReport r;
    if ((int)phi.phi_a.size() != lc.a_count || (int)phi.phi_b.size() != lc.b_count)
        r.flag("labeling-arity");
    for (int s : phi.phi_a)
        if (s < 0 || s >= lc.sigma_a) {
            r.flag("labeling-range");
            break;
        }
    for (int s : phi.phi_b)
        if (s < 0 || s >= lc.sigma_b) {
            r.flag("labeling-range");
            break;
        }
    return r;
}

inline ValidationReport validate(const LabelCoverInstance& lc, const ListLabeling& phi) {
    ValidationReport r;
    if ((int)phi.phi_a.size() != lc.a_count) r.flag("labeling-arity");
    if (phi.list_bound < 1) r.flag("list-bound");
    for (const auto& list : phi.phi_a) {
        if (list.empty()) r.flag("empty-list");
        if ((int)list.size() > phi.list_bound) r.flag("list-bound");
        auto sorted = list;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            r.flag("duplicate-symbol");
        for (int s : list)
            if (s < 0 || s >= lc.sigma_a) {
                r.flag("labeling-range");
                break;
            }
    }
    return r;
}

inline ValidationReport validate_cover(const SetCoverInstance& sc, const CoverSolution& sol) {
    ValidationReport r;
    std::vector<bool> covered(std::max(0, sc.universe_size), false);
    Rational total;
    std::vector<bool> used(sc.sets.size(), false);
    for (int idx : sol.chosen) {
        if (idx < 0 || idx >= (int)sc.sets.size()) {
            r.flag("set-index-range");
            continue;
        }
        if (used[idx]) r.flag("duplicate-set");
        used[idx] = true;
        total += sc.sets[idx].cost;
        for (int e : sc.sets[idx].members)
            if (e >= 0 && e < sc.universe_size) covered[e] = true;
    }
    for (int e = 0; e < sc.universe_size; ++e)
        if (!covered[e]) {
            r.flag("cover-complete");
            break;
        }
    if (!(total == sol.cost)) r.flag("cost-sum");
    return r;
}

// Checks the arborescence shape (in-degree <= 1, root in-degree 0, acyclic,
// connected from the root) and that all instance terminals are inside.
inline ValidationReport validate_arborescence(const DstInstance& d,
                                              const ArborescenceSolution& sol) {
    ValidationReport r;
    std::vector<int> parent(d.vertex_count, -1);
    std::map<std::pair<int, int>, Rational> instance_arcs;
    for (const auto& a : d.arcs) instance_arcs[{a.tail, a.head}] = a.cost;
    Rational total;
    bool shape_ok = true;
    std::map<std::pair<int, int>, int> seen;
    for (const auto& a : sol.arcs) {
        if (a.tail < 0 || a.tail >= d.vertex_count || a.head < 0 || a.head >= d.vertex_count) {
            r.flag("arc-range");
            shape_ok = false;
            continue;
        }
        auto it = instance_arcs.find({a.tail, a.head});
        if (it == instance_arcs.end() || !(it->second == a.cost)) r.flag("arc-not-in-instance");
        if (++seen[{a.tail, a.head}] > 1) r.flag("duplicate-arc");
        if (a.head == d.root) {
            r.flag("root-in-degree");
            shape_ok = false;
        } else if (parent[a.head] != -1) {
            r.flag("in-degree");
            shape_ok = false;
        } else {
            parent[a.head] = a.tail;
        }
        total += a.cost;
    }
    if (shape_ok) {
        // Every arc tail must be reachable from the root through solution arcs.
        std::vector<std::vector<int>> children(d.vertex_count);
        for (int v = 0; v < d.vertex_count; ++v)
            if (parent[v] != -1) children[parent[v]].push_back(v);
        std::vector<bool> reach(d.vertex_count, false);
        std::vector<int> stack{d.root};
        reach[d.root] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : children[v]) {
                reach[w] = true;
                stack.push_back(w);
            }
        }
        for (int v = 0; v < d.vertex_count; ++v)
            if (parent[v] != -1 && !reach[v]) {
                r.flag("connectivity");
                break;
            }
        for (int t : d.terminals)
            if (!reach[t]) {
                r.flag("terminal-covered");
                break;
            }
    }
    if (!(total == sol.cost)) r.flag("cost-sum");
    return r;
}

// ============================================================================
// Canonical encodings
// ============================================================================

// Gives every terminal out-degree 0 by hanging a zero-cost leaf under each
// non-leaf terminal and moving the terminal role to the leaf. Optimal cost is
// unchanged; calling it twice is a no-op.
inline DstInstance leafify(const DstInstance& d) {
    std::vector<int> outdeg(d.vertex_count, 0);
    for (const auto& a : d.arcs) outdeg[a.tail]++;
    DstInstance out = d;
    bool changed = false;
    std::vector<int> new_terminals;
    for (int t : d.terminals) {
        if (outdeg[t] == 0) {
            new_terminals.push_back(t);
        } else {
            int leaf = out.vertex_count++;
            out.arcs.push_back({t, leaf, Rational(0)});
            new_terminals.push_back(leaf);
            changed = true;
        }
    }
    if (!changed) return d;
    std::sort(new_terminals.begin(), new_terminals.end());
    out.terminals = std::move(new_terminals);
    return out;
}

// 3-level acyclic encoding of Set-Cover as DST: vertex 0 is the root, vertices
// 1..M are set nodes (arc from root costs the set), vertices M+1..M+N are the
// elements (arcs from their sets cost 0) and form the terminal set.
inline DstInstance set_cover_as_dst(const SetCoverInstance& sc) {
    int m = (int)sc.sets.size();
    DstInstance d;
    d.vertex_count = 1 + m + sc.universe_size;
    d.root = 0;
    for (int j = 0; j < m; ++j) {
        d.arcs.push_back({0, 1 + j, sc.sets[j].cost});
        for (int e : sc.sets[j].members) d.arcs.push_back({1 + j, 1 + m + e, Rational(0)});
    }
    d.arcs = normalize_arcs(std::move(d.arcs));
    for (int e = 0; e < sc.universe_size; ++e) d.terminals.push_back(1 + m + e);
    return d;
}

}  // namespace coverbench
