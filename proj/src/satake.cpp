#include "lmlab/satake.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lmlab/primes.hpp"

namespace lmlab {

using cld = std::complex<long double>;

bool SatakeSpec::has_prime(int64_t p) const {
    return std::binary_search(primes.begin(), primes.end(), p);
}

std::span<const cplx> SatakeSpec::at(int64_t p) const {
    auto it = std::lower_bound(primes.begin(), primes.end(), p);
    if (it == primes.end() || *it != p)
        throw std::invalid_argument("SatakeSpec: prime " + std::to_string(p) +
                                    " not stored (source=" + source + ")");
    size_t idx = static_cast<size_t>(it - primes.begin());
    return std::span<const cplx>(alphas.data() + idx * degree,
                                 static_cast<size_t>(degree));
}

void SatakeSpec::validate() const {
    constexpr double slack = 1e-12;
    for (size_t i = 0; i < primes.size(); ++i) {
        std::span<const cplx> a(alphas.data() + i * degree, static_cast<size_t>(degree));
        if (grc_asserted) {
            for (const cplx& z : a)
                if (std::abs(z) > 1.0 + slack)
                    throw std::domain_error("SatakeSpec: GRC violated at p=" +
                                            std::to_string(primes[i]));
        }
        if (self_dual) {
            // multiset {alpha_j} must be closed under conjugation
            std::vector<bool> used(a.size(), false);
            for (const cplx& z : a) {
                bool found = false;
                for (size_t j = 0; j < a.size(); ++j) {
                    if (!used[j] && std::abs(a[j] - std::conj(z)) <= slack) {
                        used[j] = true;
                        found = true;
                        break;
                    }
                }
                if (!found)
                    throw std::domain_error(
                        "SatakeSpec: self-dual closure violated at p=" +
                        std::to_string(primes[i]));
            }
        }
    }
}

SatakeSpec unitary_satake(uint64_t seed, int d, int64_t p_max, bool self_dual) {
    if (d < 1) throw std::invalid_argument("unitary_satake: d must be >= 1");
    if (p_max < 2) throw std::invalid_argument("unitary_satake: P_max must be >= 2");

    SatakeSpec spec;
    spec.degree = d;
    spec.p_max = p_max;
    spec.grc_asserted = true;
    spec.self_dual = self_dual;
    spec.source = "unitary(seed=" + std::to_string(seed) + ",d=" + std::to_string(d) +
                  ",pmax=" + std::to_string(p_max) +
                  ",selfdual=" + (self_dual ? "1" : "0") + ")";
    spec.primes = sieve_primes(p_max);

    SplitMix64 rng(spec.spec_hash());
    spec.alphas.reserve(spec.primes.size() * static_cast<size_t>(d));
    for (size_t i = 0; i < spec.primes.size(); ++i) {
        if (!self_dual) {
            for (int j = 0; j < d; ++j)
                spec.alphas.push_back(std::polar(1.0, 2.0 * M_PI * rng.u01()));
        } else {
            for (int j = 0; j + 1 < d; j += 2) {
                cplx z = std::polar(1.0, 2.0 * M_PI * rng.u01());
                spec.alphas.push_back(z);
                spec.alphas.push_back(std::conj(z));
            }
            if (d % 2 == 1)
                spec.alphas.push_back(cplx(rng.next() & 1 ? 1.0 : -1.0, 0.0));
        }
    }
    return spec;
}

namespace detail {

// h_r via the factor-by-factor recurrence: multiplying the generating series
// by 1/(1 - alpha x) is h[k] += alpha * h[k-1] in increasing k.
std::vector<cld> homogeneous_sym(std::span<const cld> params, int r_max) {
    std::vector<cld> h(static_cast<size_t>(r_max) + 1, cld(0.0L, 0.0L));
    h[0] = cld(1.0L, 0.0L);
    for (const cld& a : params)
        for (int k = 1; k <= r_max; ++k) h[static_cast<size_t>(k)] += a * h[static_cast<size_t>(k) - 1];
    return h;
}

static std::vector<cld> to_long(std::span<const cplx> a) {
    std::vector<cld> out;
    out.reserve(a.size());
    for (const cplx& z : a) out.emplace_back(z.real(), z.imag());
    return out;
}

// Newton route: power sums feed the log-derivative recursion.
static std::vector<cld> newton_coeffs(std::span<const cld> params, int r_max) {
    std::vector<cld> a(static_cast<size_t>(r_max) + 1, cld(0.0L, 0.0L));
    std::vector<cld> pw(params.begin(), params.end());
    for (int v = 1; v <= r_max; ++v) {
        cld s(0.0L, 0.0L);
        for (size_t j = 0; j < params.size(); ++j) {
            if (v > 1) pw[j] *= params[j];
            s += pw[j];
        }
        a[static_cast<size_t>(v)] = s;
    }
    std::vector<cld> lam(static_cast<size_t>(r_max) + 1, cld(0.0L, 0.0L));
    lam[0] = cld(1.0L, 0.0L);
    for (int r = 1; r <= r_max; ++r) {
        cld s(0.0L, 0.0L);
        for (int v = 1; v <= r; ++v) s += a[static_cast<size_t>(v)] * lam[static_cast<size_t>(r - v)];
        lam[static_cast<size_t>(r)] = s / static_cast<long double>(r);
    }
    return lam;
}

}  // namespace detail

std::vector<cplx> local_coeffs(const SatakeSpec& spec, int64_t p, int r_max) {
    if (r_max < 0) throw std::invalid_argument("local_coeffs: r_max must be >= 0");
    auto params = detail::to_long(spec.at(p));
    auto h = detail::homogeneous_sym(params, r_max);
    auto nw = detail::newton_coeffs(params, r_max);
    for (int r = 0; r <= r_max; ++r) {
        long double dev = std::abs(h[static_cast<size_t>(r)] - nw[static_cast<size_t>(r)]);
        long double scale = std::max<long double>(
            1.0L, std::max(std::abs(h[static_cast<size_t>(r)]), std::abs(nw[static_cast<size_t>(r)])));
        if (dev / scale > 1e-12L)
            throw std::runtime_error("local_coeffs: h_r vs Newton divergence at p=" +
                                     std::to_string(p) + ", r=" + std::to_string(r));
    }
    std::vector<cplx> out(static_cast<size_t>(r_max) + 1);
    for (int r = 0; r <= r_max; ++r)
        out[static_cast<size_t>(r)] = cplx(static_cast<double>(h[static_cast<size_t>(r)].real()),
                                           static_cast<double>(h[static_cast<size_t>(r)].imag()));
    return out;
}

std::vector<cplx> power_sums(const SatakeSpec& spec, int64_t p, int v_max) {
    if (v_max < 1) throw std::invalid_argument("power_sums: v_max must be >= 1");
    auto params = detail::to_long(spec.at(p));
    std::vector<cplx> out(static_cast<size_t>(v_max));
    std::vector<cld> pw(params.begin(), params.end());
    for (int v = 1; v <= v_max; ++v) {
        cld s(0.0L, 0.0L);
        for (size_t j = 0; j < params.size(); ++j) {
            if (v > 1) pw[j] *= params[j];
            s += pw[j];
        }
        out[static_cast<size_t>(v - 1)] =
            cplx(static_cast<double>(s.real()), static_cast<double>(s.imag()));
    }
    return out;
}

std::vector<double> rankin_selberg_local(const SatakeSpec& spec, int64_t p, int k_max) {
    if (k_max < 0) throw std::invalid_argument("rankin_selberg_local: k_max must be >= 0");
    auto params = detail::to_long(spec.at(p));
    size_t d = params.size();

    // |a(p^v)|^2 drive the recursion
    std::vector<long double> b(static_cast<size_t>(k_max) + 1, 0.0L);
    std::vector<cld> pw(params.begin(), params.end());
    for (int v = 1; v <= k_max; ++v) {
        cld s(0.0L, 0.0L);
        for (size_t j = 0; j < d; ++j) {
            if (v > 1) pw[j] *= params[j];
            s += pw[j];
        }
        b[static_cast<size_t>(v)] = std::norm(s);
    }
    std::vector<long double> c(static_cast<size_t>(k_max) + 1, 0.0L);
    c[0] = 1.0L;
    for (int k = 1; k <= k_max; ++k) {
        long double s = 0.0L;
        for (int v = 1; v <= k; ++v) s += b[static_cast<size_t>(v)] * c[static_cast<size_t>(k - v)];
        c[static_cast<size_t>(k)] = s / static_cast<long double>(k);
    }

    // cross-check: h_k over the d^2 Satake products
    std::vector<cld> prods;
    prods.reserve(d * d);
    for (size_t j = 0; j < d; ++j)
        for (size_t l = 0; l < d; ++l) prods.push_back(params[j] * std::conj(params[l]));
    auto h = detail::homogeneous_sym(prods, k_max);
    for (int k = 0; k <= k_max; ++k) {
        long double dev = std::abs(h[static_cast<size_t>(k)] - cld(c[static_cast<size_t>(k)], 0.0L));
        long double scale = std::max<long double>(1.0L, std::abs(c[static_cast<size_t>(k)]));
        if (dev / scale > 1e-10L)
            throw std::runtime_error("rankin_selberg_local: recursion vs product-h_k divergence at p=" +
                                     std::to_string(p) + ", k=" + std::to_string(k));
    }

    std::vector<double> out(static_cast<size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) out[static_cast<size_t>(k)] = static_cast<double>(c[static_cast<size_t>(k)]);
    return out;
}

}  // namespace lmlab
