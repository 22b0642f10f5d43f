#include "lmlab/corpora.hpp"

#include <cmath>
#include <stdexcept>

#include "lmlab/primes.hpp"
#include "lmlab/tau.hpp"

namespace lmlab {

namespace {

double lambda_from_tau(__int128 t, int64_t n) {
    long double num = i128_to_ld(t);
    long double den = std::pow(static_cast<long double>(n), 5.5L);
    return static_cast<double>(num / den);
}

}  // namespace

CoefficientTable delta_table(int64_t n_max, int tau_method) {
    auto tau = ramanujan_tau(n_max, tau_method);
    CoefficientTable out;
    out.degree = 2;
    out.n_max = n_max;
    out.kind = CoefficientTable::Kind::standard;
    out.source = "delta";
    out.params = "N=" + std::to_string(n_max);
    out.values.assign(static_cast<size_t>(n_max) + 1, cplx(0.0, 0.0));
    for (int64_t n = 1; n <= n_max; ++n)
        out.values[static_cast<size_t>(n)] = cplx(lambda_from_tau(tau[static_cast<size_t>(n)], n), 0.0);
    return out;
}

SatakeSpec delta_satake(int64_t p_max, int tau_method) {
    auto tau = ramanujan_tau(p_max, tau_method);
    SatakeSpec spec;
    spec.degree = 2;
    spec.p_max = p_max;
    spec.grc_asserted = true;
    spec.self_dual = true;
    spec.source = "delta";
    spec.primes = sieve_primes(p_max);
    spec.alphas.reserve(spec.primes.size() * 2);
    for (int64_t p : spec.primes) {
        double lam = lambda_from_tau(tau[static_cast<size_t>(p)], p);
        double half = lam / 2.0;
        double im = std::sqrt(std::max(0.0, 1.0 - half * half));
        spec.alphas.emplace_back(half, im);
        spec.alphas.emplace_back(half, -im);
    }
    return spec;
}

SatakeSpec sym2_satake(int64_t p_max, int tau_method) {
    SatakeSpec base = delta_satake(p_max, tau_method);
    SatakeSpec spec;
    spec.degree = 3;
    spec.p_max = p_max;
    spec.grc_asserted = true;
    spec.self_dual = true;
    spec.source = "sym2delta";
    spec.primes = base.primes;
    spec.alphas.reserve(spec.primes.size() * 3);
    for (size_t i = 0; i < base.primes.size(); ++i) {
        cplx a = base.alphas[2 * i];
        spec.alphas.push_back(a * a);
        spec.alphas.emplace_back(1.0, 0.0);
        spec.alphas.push_back(std::conj(a) * std::conj(a));
    }
    return spec;
}

CoefficientTable sym_square_table(int64_t n_max, int tau_method) {
    auto spec = sym2_satake(n_max, tau_method);
    auto out = extend_multiplicative(spec, n_max, CoefficientTable::Kind::standard);
    out.source = "sym2delta";
    return out;
}

SatakeSpec zeta_satake(int64_t p_max) {
    SatakeSpec spec;
    spec.degree = 1;
    spec.p_max = p_max;
    spec.grc_asserted = true;
    spec.self_dual = true;
    spec.source = "zeta_like";
    spec.primes = sieve_primes(p_max);
    spec.alphas.assign(spec.primes.size(), cplx(1.0, 0.0));
    return spec;
}

CoefficientTable ones_table(int64_t n_max) {
    if (n_max < 1) throw std::invalid_argument("ones_table: N must be >= 1");
    CoefficientTable out;
    out.degree = 1;
    out.n_max = n_max;
    out.kind = CoefficientTable::Kind::standard;
    out.source = "zeta_like";
    out.params = "N=" + std::to_string(n_max);
    out.values.assign(static_cast<size_t>(n_max) + 1, cplx(1.0, 0.0));
    out.values[0] = cplx(0.0, 0.0);
    return out;
}

CoefficientTable twist_table(int64_t n_max, double tau0) {
    if (n_max < 1) throw std::invalid_argument("twist_table: N must be >= 1");
    CoefficientTable out;
    out.degree = 1;
    out.n_max = n_max;
    out.kind = CoefficientTable::Kind::synthetic;
    out.source = "twist(tau0=" + std::to_string(tau0) + ")";
    out.params = "N=" + std::to_string(n_max);
    out.values.assign(static_cast<size_t>(n_max) + 1, cplx(0.0, 0.0));
    for (int64_t n = 1; n <= n_max; ++n)
        out.values[static_cast<size_t>(n)] =
            std::polar(1.0, tau0 * std::log(static_cast<double>(n)));
    return out;
}

CoefficientTable twist_of(const CoefficientTable& table, double tau0) {
    CoefficientTable out = table;
    out.kind = CoefficientTable::Kind::synthetic;
    out.source = table.source + "*twist(tau0=" + std::to_string(tau0) + ")";
    for (int64_t n = 1; n <= out.n_max; ++n)
        out.values[static_cast<size_t>(n)] *=
            std::polar(1.0, tau0 * std::log(static_cast<double>(n)));
    return out;
}

CoefficientTable mu2_toy_table(int64_t n_max) {
    if (n_max < 1) throw std::invalid_argument("mu2_toy_table: N must be >= 1");
    CoefficientTable out;
    out.degree = 1;
    out.n_max = n_max;
    out.kind = CoefficientTable::Kind::synthetic;
    out.source = "mu2toy";
    out.params = "N=" + std::to_string(n_max);
    out.values.assign(static_cast<size_t>(n_max) + 1, cplx(0.0, 0.0));
    // squarefree sieve
    std::vector<bool> squarefree(static_cast<size_t>(n_max) + 1, true);
    for (int64_t d = 2; d * d <= n_max; ++d)
        for (int64_t m = d * d; m <= n_max; m += d * d) squarefree[static_cast<size_t>(m)] = false;
    for (int64_t n = 1; n <= n_max; ++n)
        if (squarefree[static_cast<size_t>(n)])
            out.values[static_cast<size_t>(n)] = cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0);
    return out;
}

}  // namespace lmlab
