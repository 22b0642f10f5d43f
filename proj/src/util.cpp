#include "lmlab/util.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>

namespace lmlab {

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

void parallel_chunks(size_t n, size_t chunk,
                     const std::function<void(size_t, size_t, size_t)>& fn) {
    if (n == 0) return;
    if (chunk == 0) chunk = 1;
    size_t n_chunks = (n + chunk - 1) / chunk;
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (n_chunks == 1 || hw == 1) {
        for (size_t c = 0; c < n_chunks; ++c)
            fn(c, c * chunk, std::min(n, (c + 1) * chunk));
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            fn(c, c * chunk, std::min(n, (c + 1) * chunk));
        }
    };
    size_t n_workers = std::min<size_t>(hw, n_chunks);
    std::vector<std::future<void>> futs;
    futs.reserve(n_workers);
    for (size_t w = 0; w + 1 < n_workers; ++w)
        futs.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& f : futs) f.get();
}

std::string i128_to_string(__int128 x) {
    if (x == 0) return "0";
    bool neg = x < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : x;
    std::string s;
    while (u) {
        s += static_cast<char>('0' + static_cast<int>(u % 10));
        u /= 10;
    }
    if (neg) s += '-';
    std::reverse(s.begin(), s.end());
    return s;
}

long double i128_to_ld(__int128 x) {
    bool neg = x < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : x;
    uint64_t lo = static_cast<uint64_t>(u);
    uint64_t hi = static_cast<uint64_t>(u >> 64);
    long double r = static_cast<long double>(hi) * 18446744073709551616.0L +
                    static_cast<long double>(lo);
    return neg ? -r : r;
}

}  // namespace lmlab
