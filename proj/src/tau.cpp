#include "lmlab/tau.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "lmlab/util.hpp"

namespace lmlab {

namespace {

// ---------------------------------------------------------------------------
// NTT over 31-bit primes. Seven moduli: their product (~2^208) dominates any
// crude bound on the intermediate eta-power coefficients, so the CRT
// reconstruction below is exact, not probabilistic.
// ---------------------------------------------------------------------------
struct NttPrime {
    uint32_t p;
    uint32_t g;
};

constexpr NttPrime kPrimes[] = {
    {998244353u, 3u},   // 119*2^23+1
    {1004535809u, 3u},  // 479*2^21+1
    {469762049u, 3u},   // 7*2^26+1
    {167772161u, 3u},   // 5*2^25+1
    {754974721u, 11u},  // 45*2^24+1
    {2013265921u, 31u}, // 15*2^27+1
    {2113929217u, 5u},  // 63*2^25+1
};
constexpr int kNumPrimes = 7;

uint32_t mulmod(uint32_t a, uint32_t b, uint32_t p) {
    return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
}

uint32_t powmod(uint32_t a, uint64_t e, uint32_t p) {
    uint64_t r = 1, base = a;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(r);
}

void ntt_inplace(std::vector<uint32_t>& a, bool inverse, uint32_t p, uint32_t g) {
    size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        uint32_t wlen = powmod(g, (p - 1) / len, p);
        if (inverse) wlen = powmod(wlen, p - 2, p);
        for (size_t i = 0; i < n; i += len) {
            uint32_t w = 1;
            for (size_t j = 0; j < len / 2; ++j) {
                uint32_t u = a[i + j];
                uint32_t v = mulmod(a[i + j + len / 2], w, p);
                a[i + j] = u + v < p ? u + v : u + v - p;
                a[i + j + len / 2] = u >= v ? u - v : u + p - v;
                w = mulmod(w, wlen, p);
            }
        }
    }
    if (inverse) {
        uint32_t inv_n = powmod(static_cast<uint32_t>(n % p), p - 2, p);
        for (auto& x : a) x = mulmod(x, inv_n, p);
    }
}

uint32_t reduce_i128(__int128 v, uint32_t p) {
    __int128 r = v % p;
    if (r < 0) r += p;
    return static_cast<uint32_t>(r);
}

// Truncated square of src (degree <= deg_max kept) modulo each prime,
// returned as one residue vector per prime.
std::vector<std::vector<uint32_t>> ntt_square_residues(const std::vector<__int128>& src,
                                                       size_t deg_max) {
    size_t need = 2 * src.size() - 1;
    size_t L = 1;
    while (L < need) L <<= 1;
    std::vector<std::vector<uint32_t>> out(kNumPrimes);
    parallel_chunks(kNumPrimes, 1, [&](size_t, size_t b, size_t) {
        const auto [p, g] = kPrimes[b];
        uint64_t max_order = (p - 1) & (~(p - 2));  // largest power of two dividing p-1
        if (L > max_order)
            throw std::length_error("ntt_square_residues: transform too long for modulus");
        std::vector<uint32_t> a(L, 0);
        for (size_t i = 0; i < src.size(); ++i) a[i] = reduce_i128(src[i], p);
        ntt_inplace(a, false, p, g);
        for (auto& x : a) x = mulmod(x, x, p);
        ntt_inplace(a, true, p, g);
        a.resize(deg_max + 1);
        out[b] = std::move(a);
    });
    return out;
}

// Garner mixed-radix CRT into a centered __int128. The true values are known
// to fit (range-checked by callers), so the final accumulation may wrap mod
// 2^128 and still land on the correct signed representative.
std::vector<__int128> crt_reconstruct(const std::vector<std::vector<uint32_t>>& res) {
    // inv[i] = (p_0 ... p_{i-1})^{-1} mod p_i
    uint32_t inv[kNumPrimes] = {};
    for (int i = 0; i < kNumPrimes; ++i) {
        uint32_t p = kPrimes[i].p;
        uint32_t prod = 1 % p;
        for (int j = 0; j < i; ++j) prod = mulmod(prod, kPrimes[j].p % p, p);
        inv[i] = powmod(prod, p - 2, p);
    }
    // prefix products mod 2^128 (wrapping) and as long double (for sign test)
    unsigned __int128 pref128[kNumPrimes + 1];
    long double prefld[kNumPrimes + 1];
    pref128[0] = 1;
    prefld[0] = 1.0L;
    for (int j = 0; j < kNumPrimes; ++j) {
        pref128[j + 1] = pref128[j] * kPrimes[j].p;
        prefld[j + 1] = prefld[j] * kPrimes[j].p;
    }
    long double half_mod = prefld[kNumPrimes] / 2.0L;

    size_t n = res[0].size();
    std::vector<__int128> out(n);
    parallel_chunks(n, 1 << 15, [&](size_t, size_t lo, size_t hi) {
        uint32_t digits[kNumPrimes];
        for (size_t idx = lo; idx < hi; ++idx) {
            // mixed-radix digits: value = d0 + d1 p0 + d2 p0 p1 + ...
            for (int i = 0; i < kNumPrimes; ++i) {
                uint32_t p = kPrimes[i].p;
                uint64_t acc = 0;  // value of earlier digits mod p
                uint64_t mult = 1;
                for (int j = 0; j < i; ++j) {
                    acc = (acc + digits[j] % p * mult) % p;
                    mult = mult * (kPrimes[j].p % p) % p;
                }
                uint32_t r = res[static_cast<size_t>(i)][idx];
                uint32_t diff = r >= acc ? r - static_cast<uint32_t>(acc)
                                         : r + p - static_cast<uint32_t>(acc);
                digits[i] = mulmod(diff, inv[i], p);
            }
            unsigned __int128 v = 0;
            long double vld = 0.0L;
            for (int j = 0; j < kNumPrimes; ++j) {
                v += pref128[j] * digits[j];
                vld += prefld[j] * static_cast<long double>(digits[j]);
            }
            // center: representative in [0, prod); margin to prod/2 is ~2^80
            if (vld > half_mod) v -= pref128[kNumPrimes];
            out[idx] = static_cast<__int128>(v);
        }
    });
    return out;
}

// Schoolbook truncated square with __int128 accumulation, parallel over
// output blocks.
std::vector<__int128> schoolbook_square(const std::vector<__int128>& a, size_t deg_max) {
    size_t n = std::min(a.size() - 1, deg_max);
    std::vector<__int128> out(deg_max + 1, 0);
    parallel_chunks(deg_max + 1, 4096, [&](size_t, size_t lo, size_t hi) {
        for (size_t k = lo; k < hi; ++k) {
            __int128 acc = 0;
            size_t i_lo = k > n ? k - n : 0;
            size_t half = k / 2;
            for (size_t i = i_lo; i <= half; ++i) {
                __int128 prod = a[i] * a[k - i];
                acc += (2 * i == k) ? prod : 2 * prod;
            }
            out[k] = acc;
        }
    });
    return out;
}

void range_check(const std::vector<__int128>& v, long double bound, const char* what) {
    for (size_t i = 0; i < v.size(); ++i) {
        long double mag = i128_to_ld(v[i]);
        if (mag > bound || mag < -bound)
            throw std::overflow_error(std::string(what) + ": coefficient out of range at index " +
                                      std::to_string(i));
    }
}

}  // namespace

std::vector<__int128> ramanujan_tau(int64_t n_max, int method) {
    if (n_max < 1) throw std::invalid_argument("ramanujan_tau: N must be >= 1");
    if (n_max > (1 << 20))
        throw std::invalid_argument("ramanujan_tau: N > 2^20 exceeds the desk-scale cap");

    size_t deg = static_cast<size_t>(n_max - 1);  // tau(n) = [q^{n-1}] prod^24

    // Jacobi cube: prod(1-q^n)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}
    std::vector<__int128> eta3(deg + 1, 0);
    for (int64_t k = 0;; ++k) {
        int64_t idx = k * (k + 1) / 2;
        if (idx > static_cast<int64_t>(deg)) break;
        eta3[static_cast<size_t>(idx)] = (k % 2 == 0 ? 1 : -1) * (2 * k + 1);
    }

    // First squaring is always cheap schoolbook over the sparse support.
    std::vector<__int128> eta6(deg + 1, 0);
    {
        std::vector<std::pair<size_t, int64_t>> nz;
        for (size_t i = 0; i <= deg; ++i)
            if (eta3[i] != 0) nz.emplace_back(i, static_cast<int64_t>(eta3[i]));
        for (size_t a = 0; a < nz.size(); ++a) {
            if (2 * nz[a].first > deg) break;
            eta6[2 * nz[a].first] += static_cast<__int128>(nz[a].second) * nz[a].second;
            for (size_t b = a + 1; b < nz.size(); ++b) {
                size_t k = nz[a].first + nz[b].first;
                if (k > deg) break;
                eta6[k] += 2 * static_cast<__int128>(nz[a].second) * nz[b].second;
            }
        }
    }

    bool use_ntt = (method == 2) || (method == 0 && n_max > 32768);
    if (method == 1) use_ntt = false;

    std::vector<__int128> eta12, eta24;
    if (!use_ntt) {
        eta12 = schoolbook_square(eta6, deg);
        // keeps eta24 partial sums inside int128: N * max^2 <= 2^20 * 2^106
        range_check(eta12, 0x1.0p53L, "eta12");
        eta24 = schoolbook_square(eta12, deg);
    } else {
        eta12 = crt_reconstruct(ntt_square_residues(eta6, deg));
        range_check(eta12, 0x1.0p120L, "eta12");
        eta24 = crt_reconstruct(ntt_square_residues(eta12, deg));
    }
    range_check(eta24, 0x1.0p122L, "tau");

    std::vector<__int128> tau(static_cast<size_t>(n_max) + 1, 0);
    for (int64_t n = 1; n <= n_max; ++n) tau[static_cast<size_t>(n)] = eta24[static_cast<size_t>(n - 1)];
    return tau;
}

}  // namespace lmlab
