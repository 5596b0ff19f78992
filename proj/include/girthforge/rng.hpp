#pragma once

#include <cstdint>
#include <vector>

namespace gf {

// Deterministic 64-bit generator (splitmix64 core). We avoid the standard
// distributions on purpose: their output is implementation-defined, and the
// test suite freezes values produced under fixed seeds.
class Rng {
public:
    explicit Rng(uint64_t seed = 0) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), bound >= 1, by rejection
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    int below_int(int bound) { return static_cast<int>(below(static_cast<uint64_t>(bound))); }

    // true with probability num/den (exact over the 53-bit mantissa range)
    bool chance(double p) {
        return (next() >> 11) < static_cast<uint64_t>(p * 9007199254740992.0);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // derive an independent stream (used for per-restart seeding)
    uint64_t fork() { return next() ^ 0xa0761d6478bd642fULL; }

private:
    uint64_t state_;
};

}  // namespace gf
