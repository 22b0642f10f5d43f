#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace lmlab {

// Primes up to n inclusive (Eratosthenes).
std::vector<int64_t> sieve_primes(int64_t n);

// Smallest-prime-factor table: spf[k] for 2 <= k <= n, spf[0] = spf[1] = 0.
std::vector<int32_t> smallest_prime_factor(int64_t n);

// (prime, exponent) factorization by trial division. Fine for n up to ~1e12.
std::vector<std::pair<int64_t, int>> factorize(int64_t n);

bool is_prime(int64_t n);

// Number of distinct prime factors of m lying in [P, Q].
int omega_in_range(int64_t m, double P, double Q);

}  // namespace lmlab
