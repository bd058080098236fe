#pragma once

#include <cmath>
#include <cstdint>

#include "coverbench/errors.hpp"
#include "coverbench/rational.hpp"

namespace coverbench {

// Integer-exact parameter arithmetic shared by the phi dial and the reduction
// schedule. Powers are compared in __int128 with saturation, so ceilings like
// ceil(N^(p/q)) never go through floating point when exactness is reachable.

inline constexpr __int128 kPowCap = (__int128)1 << 120;

// base^exp, saturating at kPowCap.
inline __int128 pow_capped(__int128 base, int64_t exp) {
    __int128 r = 1;
    for (int64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > kPowCap / base) return kPowCap;
        r *= base;
        if (r >= kPowCap) return kPowCap;
    }
    return r;
}

// ceil(base^(p/q)) for base >= 1 and p, q >= 1. Exact whenever base^p stays
// under the saturation cap (always true at desk scale); otherwise falls back
// to long-double with a +/-2 exact-verification window.
inline int64_t ceil_pow_rational(int64_t base, int64_t p, int64_t q) {
    if (base < 1 || p < 0 || q < 1) fail(ErrorCode::BadParameters, "ceil_pow_rational domain");
    if (p == 0 || base == 1) return 1;
    long double guess = powl((long double)base, (long double)p / (long double)q);
    auto k0 = (int64_t)llroundl(guess);
    __int128 target = pow_capped(base, p);
    if (target >= kPowCap)
        return (int64_t)ceill(guess - 1e-9L);  // out of exact range; report-only sizes
    // smallest k with k^q >= base^p, anchored near the floating guess
    int64_t k = k0 > 4 ? k0 - 4 : 1;
    while (pow_capped(k, q) < target) ++k;
    while (k > 1 && pow_capped(k - 1, q) >= target) --k;
    return k;
}

inline bool is_prime_power(int64_t n) {
    if (n < 2) return false;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        return n == 1;
    }
    return true;  // n is prime
}

inline int64_t smallest_prime_power_at_least(int64_t n) {
    int64_t k = n < 2 ? 2 : n;
    while (!is_prime_power(k)) ++k;
    return k;
}

// True when q = d^k for some k >= 1.
inline bool is_power_of(int64_t q, int64_t d) {
    if (d < 2 || q < d) return q == d;
    while (q % d == 0) q /= d;
    return q == 1;
}

// C(n, k) saturating at cap; used for enumeration budgets.
inline uint64_t binomial_capped(int n, int k, uint64_t cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > (__int128)cap) return cap;
    }
    return (uint64_t)r;
}

}  // namespace coverbench
