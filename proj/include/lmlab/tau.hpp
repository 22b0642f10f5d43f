#pragma once

#include <cstdint>
#include <vector>

namespace lmlab {

// tau(1..N) as exact integers, from q * prod(1-q^n)^24 written as the fourth
// power of the Jacobi cube eta^3 = sum (-1)^k (2k+1) q^{k(k+1)/2} and expanded
// by three truncated power-series squarings. Values are range-checked into
// __int128 (|tau(n)| <= d(n) n^{11/2} stays far below 2^127 for n <= 2^20).
//
// method: 0 = auto (schoolbook below the crossover, NTT above),
//         1 = schoolbook squarings only,
//         2 = NTT/CRT squarings only (must match schoolbook bit for bit).
std::vector<__int128> ramanujan_tau(int64_t n_max, int method = 0);

}  // namespace lmlab
