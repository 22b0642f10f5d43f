#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lmlab/util.hpp"

namespace lmlab {

// Local data of a degree-d Euler product: for each stored prime p, the d
// complex parameters alpha_j(p). Everywhere-unramified by construction.
struct SatakeSpec {
    int degree = 0;
    int64_t p_max = 0;
    bool grc_asserted = false;
    bool self_dual = false;
    std::vector<int64_t> primes;  // ascending
    std::vector<cplx> alphas;     // degree entries per prime, contiguous
    std::string source;           // human-readable provenance

    uint64_t spec_hash() const { return fnv1a64(source); }

    bool has_prime(int64_t p) const;
    // Parameters at p; throws std::invalid_argument for an unknown prime.
    std::span<const cplx> at(int64_t p) const;

    // Enforces the GRC and self-dual invariants on the stored data (1e-12
    // slack). Throws std::domain_error on violation.
    void validate() const;
};

// Deterministic synthetic spec: all |alpha_j(p)| = 1, angles drawn from a
// splitmix64 stream keyed by the spec hash. With self_dual the parameters
// come in conjugate pairs (plus a +-1 when d is odd).
SatakeSpec unitary_satake(uint64_t seed, int d, int64_t p_max, bool self_dual);

// lambda(p^r) for r = 0..r_max, computed as the complete homogeneous
// symmetric polynomial h_r(alpha_1..alpha_d) and cross-checked against the
// Newton recursion r*lambda(p^r) = sum_v a(p^v) lambda(p^{r-v}) coming from
// the exponential form of the local factor. Throws std::runtime_error if the
// two routes disagree beyond 1e-12 (relative to max(1, |value|)).
std::vector<cplx> local_coeffs(const SatakeSpec& spec, int64_t p, int r_max);

// Power sums a(p^v) = sum_j alpha_j^v for v = 1..v_max.
std::vector<cplx> power_sums(const SatakeSpec& spec, int64_t p, int v_max);

// Rankin-Selberg local coefficients c_k for k = 0..k_max via the recursion
// k*c_k = sum_v |a(p^v)|^2 c_{k-v}, cross-checked against h_k over the d^2
// products {alpha_j * conj(alpha_l)} (1e-10 tolerance).
std::vector<double> rankin_selberg_local(const SatakeSpec& spec, int64_t p, int k_max);

namespace detail {
// h_r of an arbitrary parameter list (shared by both cross-check routes).
std::vector<std::complex<long double>> homogeneous_sym(
    std::span<const std::complex<long double>> params, int r_max);
}

}  // namespace lmlab
