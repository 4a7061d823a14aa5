#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace graphlearn {

// Deterministic random streams.
//
// Every experiment takes one master seed. Trial i runs on the substream
// seeded with mix_seed(master, i), and sweep point j derives its own master
// as mix_seed(master, j) before fanning out to trials. Because substream
// derivation is a pure 64-bit mix, results are bit-identical no matter how
// trials are scheduled across worker threads.

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective on uint64.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// The documented substream derivation: finalize the stream index, fold it
// into the seed, finalize again.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream));
}

// Counter-based SplitMix64 generator. Small state, no platform-dependent
// behavior (std distributions are implementation-defined, so we avoid them).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Uniform in [0,1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Uniform integer in [0, n). Lemire's multiply-shift with rejection,
    // so the result is exactly uniform.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    int next_index(int n) { return static_cast<int>(next_below(static_cast<std::uint64_t>(n))); }

    // k distinct values from {lo, ..., hi}, ascending. Floyd's algorithm.
    std::vector<int> sample_without_replacement(int lo, int hi, int k);

private:
    std::uint64_t state_;
};

inline std::vector<int> Rng::sample_without_replacement(int lo, int hi, int k) {
    std::vector<int> out;
    if (k <= 0 || hi < lo) return out;
    const int range = hi - lo + 1;
    if (k >= range) {
        out.resize(range);
        for (int i = 0; i < range; ++i) out[i] = lo + i;
        return out;
    }
    std::vector<bool> taken(static_cast<std::size_t>(range), false);
    for (int j = range - k; j < range; ++j) {
        int t = next_index(j + 1);
        if (taken[static_cast<std::size_t>(t)]) t = j;
        taken[static_cast<std::size_t>(t)] = true;
        out.push_back(lo + t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace graphlearn
