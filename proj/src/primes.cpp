#include "lmlab/primes.hpp"

#include <cmath>
#include <stdexcept>

namespace lmlab {

std::vector<int64_t> sieve_primes(int64_t n) {
    std::vector<int64_t> primes;
    if (n < 2) return primes;
    std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
    for (int64_t i = 2; i * i <= n; ++i) {
        if (comp[static_cast<size_t>(i)]) continue;
        for (int64_t j = i * i; j <= n; j += i) comp[static_cast<size_t>(j)] = true;
    }
    for (int64_t i = 2; i <= n; ++i)
        if (!comp[static_cast<size_t>(i)]) primes.push_back(i);
    return primes;
}

std::vector<int32_t> smallest_prime_factor(int64_t n) {
    if (n < 0) throw std::invalid_argument("smallest_prime_factor: negative n");
    std::vector<int32_t> spf(static_cast<size_t>(n) + 1, 0);
    for (int64_t i = 2; i <= n; ++i) {
        if (spf[static_cast<size_t>(i)] == 0) {
            for (int64_t j = i; j <= n; j += i)
                if (spf[static_cast<size_t>(j)] == 0)
                    spf[static_cast<size_t>(j)] = static_cast<int32_t>(i);
        }
    }
    return spf;
}

std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    std::vector<std::pair<int64_t, int>> out;
    for (int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
        if (n % p == 0) return false;
    return true;
}

int omega_in_range(int64_t m, double P, double Q) {
    if (m < 1) throw std::invalid_argument("omega_in_range: m must be >= 1");
    int count = 0;
    for (const auto& [p, e] : factorize(m)) {
        (void)e;
        if (static_cast<double>(p) >= P && static_cast<double>(p) <= Q) ++count;
    }
    return count;
}

}  // namespace lmlab
