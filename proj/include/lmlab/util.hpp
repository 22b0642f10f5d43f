#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <future>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace lmlab {

using cplx = std::complex<double>;

// splitmix64: the project-wide PRNG for synthetic corpora. Seeded from a spec
// hash so generated data is reproducible across platforms.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    uint64_t below(uint64_t n) { return next() % n; }
};

inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string hex64(uint64_t v);

// Pairwise (tree) summation over a span; fixed association independent of
// platform, used everywhere a cross-run-deterministic sum is required.
template <typename T>
T pairwise_sum(std::span<const T> v) {
    if (v.empty()) return T{};
    if (v.size() <= 8) {
        T acc = v[0];
        for (size_t i = 1; i < v.size(); ++i) acc += v[i];
        return acc;
    }
    size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(std::span<const T>(v));
}

// Runs fn(chunk_index, begin, end) over [0, n) split into fixed-size chunks.
// The chunk partition depends only on (n, chunk); results must be written to
// disjoint storage per chunk so the outcome is identical for any thread count.
void parallel_chunks(size_t n, size_t chunk,
                     const std::function<void(size_t, size_t, size_t)>& fn);

std::string i128_to_string(__int128 x);
long double i128_to_ld(__int128 x);

}  // namespace lmlab
