#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "coverbench/errors.hpp"
#include "coverbench/instances.hpp"
#include "coverbench/rational.hpp"

namespace coverbench {

// Density-rule greedy for weighted Set-Cover and Submodular Cover, with the
// Chvatal-style ratio certificate. Tie rule is total (lowest set index /
// lowest element id), so traces are reproducible.

struct GreedyTrace {
    struct Step {
        int chosen = -1;
        Rational density;               // cost / newly covered, 0 for free sets
        std::vector<int> newly_covered; // element ids, ascending
    };
    std::vector<Step> steps;
    Rational total_cost;
    Rational ratio_bound;  // 1 + ln(d_max), rounded up at 12 decimals
    int d_max = 0;         // largest set size in the instance
};

// 1 + ln(d_max) as a rational. The logarithm is the only place floating point
// appears; it is rounded up at 12 decimal digits and never feeds back into
// cost arithmetic.
inline Rational chvatal_bound(int64_t d_max) {
    if (d_max < 1) fail(ErrorCode::BadParameters, "chvatal_bound needs d_max >= 1");
    if (d_max == 1) return Rational(1);
    const int64_t scale = 1000000000000LL;  // 10^12
    double ln = std::log((double)d_max);
    auto scaled = (int64_t)std::ceil(ln * (double)scale);
    return Rational(1) + Rational(scaled, scale);
}

inline std::pair<CoverSolution, GreedyTrace> greedy_set_cover(const SetCoverInstance& sc) {
    auto rep = validate(sc);
    if (rep.has("coverability"))
        fail(ErrorCode::UncoverableInstance, "some element belongs to no set");
    int m = (int)sc.sets.size();
    GreedyTrace trace;
    for (const auto& s : sc.sets) trace.d_max = std::max(trace.d_max, (int)s.members.size());
    trace.ratio_bound = chvatal_bound(std::max(1, trace.d_max));

    std::vector<bool> covered(sc.universe_size, false);
    int remaining = sc.universe_size;
    std::vector<bool> used(m, false);
    CoverSolution sol;

    auto take = [&](int j, const Rational& density) {
        GreedyTrace::Step step;
        step.chosen = j;
        step.density = density;
        for (int e : sc.sets[j].members)
            if (!covered[e]) {
                covered[e] = true;
                --remaining;
                step.newly_covered.push_back(e);
            }
        used[j] = true;
        sol.chosen.push_back(j);
        sol.cost += sc.sets[j].cost;
        trace.steps.push_back(std::move(step));
    };

    // Free sets first: density is undefined at cost 0 and taking them never
    // hurts optimality.
    for (int j = 0; j < m; ++j)
        if (sc.sets[j].cost.is_zero()) take(j, Rational(0));

    while (remaining > 0) {
        int best = -1;
        Rational best_density;
        int best_new = 0;
        for (int j = 0; j < m; ++j) {
            if (used[j]) continue;
            int fresh = 0;
            for (int e : sc.sets[j].members)
                if (!covered[e]) ++fresh;
            if (fresh == 0) continue;
            Rational density = sc.sets[j].cost / Rational(fresh);
            if (best < 0 || density < best_density) {
                best = j;
                best_density = density;
                best_new = fresh;
            }
        }
        if (best < 0)
            fail(ErrorCode::UncoverableInstance, "uncovered elements remain but no set helps");
        (void)best_new;
        take(best, best_density);
    }
    trace.total_cost = sol.cost;
    return {std::move(sol), std::move(trace)};
}

// ============================================================================
// Submodular cover
// ============================================================================

// Ground sets are capped at 64 elements; subsets travel as bitmasks. The
// callback must be safe to invoke from the calling thread only.
struct SubmodularOracle {
    int ground_size = 0;
    std::function<Rational(uint64_t)> value;
    std::vector<Rational> element_cost;
};

struct SubmodularTrace {
    std::vector<int> picks;  // element ids in pick order
    Rational total_cost;
};

// Exhaustive monotonicity + submodularity audit; feasible for ground <= 10.
// Checks f(S+x) - f(S) >= f(T+x) - f(T) on all S subset of T, x outside T.
inline bool verify_submodular_oracle(const SubmodularOracle& o, std::string* why = nullptr) {
    int n = o.ground_size;
    if (n > 16) fail(ErrorCode::BudgetExceeded, "submodular audit supports ground size <= 16");
    uint64_t full = n >= 64 ? ~0ull : (1ull << n) - 1;
    std::vector<Rational> f(full + 1);
    for (uint64_t s = 0; s <= full; ++s) f[s] = o.value(s);
    // monotone: adding one element never decreases f
    for (uint64_t s = 0; s <= full; ++s)
        for (int x = 0; x < n; ++x) {
            if (s & (1ull << x)) continue;
            if (f[s | (1ull << x)] < f[s]) {
                if (why) *why = "not monotone at x=" + std::to_string(x);
                return false;
            }
        }
    // submodular: marginal gains shrink as the base grows. Enumerate T and its
    // subsets S directly.
    for (uint64_t t = 0; t <= full; ++t) {
        for (uint64_t s = t;; s = (s - 1) & t) {
            for (int x = 0; x < n; ++x) {
                if (t & (1ull << x)) continue;
                uint64_t xb = 1ull << x;
                if (f[s | xb] - f[s] < f[t | xb] - f[t]) {
                    if (why) *why = "not submodular at x=" + std::to_string(x);
                    return false;
                }
            }
            if (s == 0) break;
        }
    }
    return true;
}

// Greedy min-density cover: repeatedly add the element minimizing
// cost / marginal gain until f(S) = f(U).
inline std::pair<std::vector<int>, SubmodularTrace> greedy_submodular_cover(
    const SubmodularOracle& o) {
    int n = o.ground_size;
    if (n < 0 || n > 63) fail(ErrorCode::BadParameters, "ground size must be in [0, 63]");
    if ((int)o.element_cost.size() != n)
        fail(ErrorCode::BadParameters, "element cost arity mismatch");
    uint64_t full = n == 0 ? 0 : (1ull << n) - 1;
    Rational target = o.value(full);
    uint64_t s = 0;
    Rational fs = o.value(0);
    SubmodularTrace trace;
    while (!(fs == target)) {
        int best = -1;
        Rational best_density;
        Rational best_gain;
        for (int x = 0; x < n; ++x) {
            if (s & (1ull << x)) continue;
            Rational gain = o.value(s | (1ull << x)) - fs;
            if (!(Rational(0) < gain)) continue;
            Rational density = o.element_cost[x] / gain;
            if (best < 0 || density < best_density) {
                best = x;
                best_density = density;
                best_gain = gain;
            }
        }
        if (best < 0)
            fail(ErrorCode::StalledOracle,
                 "f(S) below f(U) but no element has positive marginal gain");
        (void)best_gain;
        s |= 1ull << best;
        fs = o.value(s);
        trace.picks.push_back(best);
        trace.total_cost += o.element_cost[best];
    }
    std::vector<int> members;
    for (int x = 0; x < n; ++x)
        if (s & (1ull << x)) members.push_back(x);
    return {std::move(members), std::move(trace)};
}

// Coverage oracle over a set system: f(S) = |union of chosen sets|. Used to
// cross-check the two greedy implementations step by step.
inline SubmodularOracle coverage_oracle(const SetCoverInstance& sc) {
    SubmodularOracle o;
    o.ground_size = (int)sc.sets.size();
    for (const auto& s : sc.sets) o.element_cost.push_back(s.cost);
    std::vector<std::vector<int>> members;
    for (const auto& s : sc.sets) members.push_back(s.members);
    int universe = sc.universe_size;
    o.value = [members, universe](uint64_t mask) {
        std::vector<bool> seen(universe, false);
        int count = 0;
        for (size_t j = 0; j < members.size(); ++j) {
            if (!(mask & (1ull << j))) continue;
            for (int e : members[j])
                if (!seen[e]) {
                    seen[e] = true;
                    ++count;
                }
        }
        return Rational(count);
    };
    return o;
}

}  // namespace coverbench
