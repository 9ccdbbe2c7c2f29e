#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace memetrace {

// Deterministic random machinery used by the simulator and the trainer.
// splitmix64 expands one u64 seed into generator state; xoshiro256** is the
// core stream. Both produce identical sequences on every platform, which is
// what keeps generated datasets and trained models byte-reproducible. The
// standard <random> distributions are avoided on purpose: their outputs are
// implementation-defined.

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n). Modulo bias is negligible for desk-scale n.
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Exponential with the given mean, via inverse CDF.
    double exponential(double mean) { return -mean * std::log1p(-uniform01()); }

    // First k elements of a Fisher-Yates shuffle: a k-sample without
    // replacement from items (items is copied, order deterministic).
    template <typename T>
    std::vector<T> sample(const std::vector<T>& items, std::size_t k) {
        std::vector<T> pool = items;
        if (k > pool.size()) k = pool.size();
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + static_cast<std::size_t>(below(pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Derives an independent substream seed from a parent seed and a string key
// (e.g. one substream per meme). Mixing through splitmix decorrelates seeds
// that differ in a single bit.
inline std::uint64_t derive_seed(std::uint64_t parent, std::string_view key) {
    SplitMix64 sm(parent ^ fnv1a64(key));
    return sm.next();
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
    SplitMix64 sm(parent ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return sm.next();
}

} // namespace memetrace
