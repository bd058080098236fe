#pragma once

// Test-only independent oracles. These deliberately take different routes
// than the library code they audit: plain mask scans instead of branch
// search, simple-path enumeration instead of Dijkstra, full two-sided
// labeling enumeration instead of the A-side majority shortcut.

#include <algorithm>
#include <optional>
#include <vector>

#include "coverbench/instances.hpp"
#include "coverbench/rational.hpp"
#include "coverbench/reductions.hpp"

namespace oracles {

using coverbench::DstInstance;
using coverbench::LabelCoverInstance;
using coverbench::PartitionSystem;
using coverbench::Rational;
using coverbench::SetCoverInstance;

// Shortest s->v distance by enumerating all simple paths.
inline std::optional<Rational> simple_path_distance(const DstInstance& d, int s, int v) {
    std::optional<Rational> best;
    std::vector<bool> on_path(d.vertex_count, false);
    auto dfs = [&](auto&& self, int cur, Rational cost) -> void {
        if (cur == v) {
            if (!best || cost < *best) best = cost;
            return;
        }
        on_path[cur] = true;
        for (const auto& a : d.arcs) {
            if (a.tail != cur || on_path[a.head]) continue;
            self(self, a.head, cost + a.cost);
        }
        on_path[cur] = false;
    };
    dfs(dfs, s, Rational(0));
    return best;
}

// Exact min-cost cover by scanning every subset of sets.
inline std::optional<Rational> mask_scan_set_cover(const SetCoverInstance& sc) {
    int m = (int)sc.sets.size();
    std::optional<Rational> best;
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<bool> covered(sc.universe_size, false);
        Rational cost;
        for (int j = 0; j < m; ++j) {
            if (!(mask & (1u << j))) continue;
            cost += sc.sets[j].cost;
            for (int e : sc.sets[j].members) covered[e] = true;
        }
        bool full = true;
        for (int e = 0; e < sc.universe_size && full; ++e) full = covered[e];
        if (full && (!best || cost < *best)) best = cost;
    }
    return best;
}

// Exact best covered fraction by enumerating BOTH sides of the labeling.
inline Rational two_sided_best_fraction(const LabelCoverInstance& lc) {
    if (lc.edges.empty()) return Rational(1);
    long long best = -1;
    std::vector<int> pa(lc.a_count, 0), pb(lc.b_count, 0);
    auto count_covered = [&]() {
        long long c = 0;
        for (size_t i = 0; i < lc.edges.size(); ++i)
            if (lc.projections[i][pa[lc.edges[i].a]] == pb[lc.edges[i].b]) ++c;
        return c;
    };
    for (;;) {
        for (;;) {
            best = std::max(best, count_covered());
            int pos = lc.b_count - 1;
            while (pos >= 0 && ++pb[pos] == lc.sigma_b) pb[pos--] = 0;
            if (pos < 0) break;
        }
        int pos = lc.a_count - 1;
        while (pos >= 0 && ++pa[pos] == lc.sigma_a) pa[pos--] = 0;
        if (pos < 0) break;
    }
    return Rational(best, (int64_t)lc.edges.size());
}

// Independent cover search over a partition system: k <= ell parts from k
// distinct partitions, enumerated as combinations of partition indices times
// odometers over part choices.
inline bool partition_cover_exists(const PartitionSystem& ps, int ell) {
    int k_max = std::min(ell, ps.count);
    std::vector<int> combo;
    auto covers = [&](const std::vector<int>& partitions, const std::vector<int>& parts) {
        std::vector<bool> seen(ps.universe, false);
        for (size_t i = 0; i < partitions.size(); ++i)
            for (int x = 0; x < ps.universe; ++x)
                if (ps.assignment[partitions[i]][x] == parts[i]) seen[x] = true;
        for (int x = 0; x < ps.universe; ++x)
            if (!seen[x]) return false;
        return true;
    };
    auto try_combo = [&](const std::vector<int>& partitions) {
        std::vector<int> parts(partitions.size(), 0);
        for (;;) {
            if (covers(partitions, parts)) return true;
            int pos = (int)parts.size() - 1;
            while (pos >= 0 && ++parts[pos] == ps.parts) parts[pos--] = 0;
            if (pos < 0) return false;
        }
    };
    auto rec = [&](auto&& self, int start, int need) -> bool {
        if (need == 0) return try_combo(combo);
        for (int i = start; i + need <= ps.count; ++i) {
            combo.push_back(i);
            if (self(self, i + 1, need - 1)) return true;
            combo.pop_back();
        }
        return false;
    };
    for (int k = 1; k <= k_max; ++k)
        if (rec(rec, 0, k)) return true;
    return false;
}

}  // namespace oracles
