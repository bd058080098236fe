#pragma once

#include <cstdint>
#include <random>
#include <vector>
#include <algorithm>

namespace coverbench {

// Seeded generator used by every randomized builder. std::uniform_int_distribution
// is implementation-defined, so sampling goes through rejection on raw engine
// output; the same seed reproduces the same stream on any platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // Uniform in [0, n), n >= 1.
    int below(int n) {
        uint64_t un = (uint64_t)n;
        uint64_t limit = UINT64_MAX - UINT64_MAX % un;
        uint64_t v;
        do { v = eng_(); } while (v >= limit);
        return (int)(v % un);
    }

    int in_range(int lo, int hi) { return lo + below(hi - lo + 1); }  // inclusive

    bool coin() { return (eng_() & 1u) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[(size_t)below((int)i)]);
    }

    // k distinct values from [0, n), sorted ascending.
    std::vector<int> sample(int n, int k) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        shuffle(pool);
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace coverbench
