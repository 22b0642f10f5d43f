#include "lmlab/coeff_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lmlab/primes.hpp"

namespace lmlab {

cplx CoefficientTable::at(int64_t n) const {
    if (n < 1 || n > n_max)
        throw std::out_of_range("CoefficientTable: index " + std::to_string(n) +
                                " outside [1, " + std::to_string(n_max) + "]");
    return values[static_cast<size_t>(n)];
}

const char* CoefficientTable::kind_name(Kind k) {
    switch (k) {
        case Kind::standard: return "standard";
        case Kind::rankin_selberg: return "rankin_selberg";
        case Kind::boxplus: return "boxplus";
        case Kind::tau_d: return "tau_d";
        case Kind::synthetic: return "synthetic";
    }
    return "?";
}

CoefficientTable extend_multiplicative(const SatakeSpec& spec, int64_t n_max,
                                       CoefficientTable::Kind kind) {
    if (n_max < 1) throw std::invalid_argument("extend_multiplicative: N must be >= 1");
    if (kind != CoefficientTable::Kind::standard &&
        kind != CoefficientTable::Kind::rankin_selberg)
        throw std::invalid_argument("extend_multiplicative: kind must be standard or rankin_selberg");

    auto primes = sieve_primes(n_max);
    for (int64_t p : primes)
        if (!spec.has_prime(p))
            throw std::invalid_argument("extend_multiplicative: spec missing prime " +
                                        std::to_string(p));

    // local coefficient blocks, one per prime, r up to floor(log_p N)
    std::vector<size_t> offset(primes.size() + 1, 0);
    std::vector<int> rmax(primes.size(), 0);
    for (size_t i = 0; i < primes.size(); ++i) {
        int r = 1;
        double pk = static_cast<double>(primes[i]);
        while (pk * primes[i] <= static_cast<double>(n_max) + 0.5) {
            pk *= primes[i];
            ++r;
        }
        rmax[i] = r;
        offset[i + 1] = offset[i] + static_cast<size_t>(r) + 1;
    }
    std::vector<cplx> local(offset.back());
    parallel_chunks(primes.size(), 512, [&](size_t, size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            if (kind == CoefficientTable::Kind::standard) {
                auto lc = local_coeffs(spec, primes[i], rmax[i]);
                std::copy(lc.begin(), lc.end(), local.begin() + static_cast<long>(offset[i]));
            } else {
                auto rs = rankin_selberg_local(spec, primes[i], rmax[i]);
                for (size_t r = 0; r < rs.size(); ++r)
                    local[offset[i] + r] = cplx(rs[r], 0.0);
            }
        }
    });

    std::vector<int32_t> pidx(static_cast<size_t>(n_max) + 1, -1);
    for (size_t i = 0; i < primes.size(); ++i)
        pidx[static_cast<size_t>(primes[i])] = static_cast<int32_t>(i);

    auto spf = smallest_prime_factor(n_max);
    CoefficientTable out;
    out.degree = kind == CoefficientTable::Kind::standard ? spec.degree
                                                          : spec.degree * spec.degree;
    out.n_max = n_max;
    out.kind = kind;
    out.source = spec.source;
    out.params = "N=" + std::to_string(n_max);
    out.values.assign(static_cast<size_t>(n_max) + 1, cplx(0.0, 0.0));
    out.values[1] = cplx(1.0, 0.0);

    // pe[n] = p^{v_p(n)} and ee[n] = v_p(n) for p = spf[n]
    std::vector<int64_t> pe(static_cast<size_t>(n_max) + 1, 0);
    std::vector<uint8_t> ee(static_cast<size_t>(n_max) + 1, 0);
    for (int64_t n = 2; n <= n_max; ++n) {
        int64_t p = spf[static_cast<size_t>(n)];
        int64_t m = n / p;
        if (m % p == 0) {
            pe[static_cast<size_t>(n)] = pe[static_cast<size_t>(m)] * p;
            ee[static_cast<size_t>(n)] = static_cast<uint8_t>(ee[static_cast<size_t>(m)] + 1);
        } else {
            pe[static_cast<size_t>(n)] = p;
            ee[static_cast<size_t>(n)] = 1;
        }
        int64_t rest = n / pe[static_cast<size_t>(n)];
        cplx loc = local[offset[static_cast<size_t>(pidx[static_cast<size_t>(p)])] +
                         ee[static_cast<size_t>(n)]];
        out.values[static_cast<size_t>(n)] = loc * out.values[static_cast<size_t>(rest)];
    }
    return out;
}

CoefficientTable boxplus_coeffs(const CoefficientTable& table, int64_t n_max) {
    if (table.n_max < n_max)
        throw std::invalid_argument("boxplus_coeffs: table shorter than N");
    if (n_max < 1) throw std::invalid_argument("boxplus_coeffs: N must be >= 1");
    CoefficientTable out;
    out.degree = table.degree + 1;
    out.n_max = n_max;
    out.kind = CoefficientTable::Kind::boxplus;
    out.source = table.source;
    out.params = "boxplus,N=" + std::to_string(n_max);
    out.values.assign(static_cast<size_t>(n_max) + 1, cplx(0.0, 0.0));
    for (int64_t l = 1; l <= n_max; ++l) {
        cplx v = table.values[static_cast<size_t>(l)];
        for (int64_t n = l; n <= n_max; n += l) out.values[static_cast<size_t>(n)] += v;
    }
    return out;
}

int64_t tau_d(int64_t n, int d) {
    if (n < 1 || d < 1) throw std::invalid_argument("tau_d: need n >= 1, d >= 1");
    __int128 acc = 1;
    for (const auto& [p, r] : factorize(n)) {
        (void)p;
        // C(r+d-1, d-1) built incrementally
        __int128 c = 1;
        for (int i = 1; i <= r; ++i) {
            c = c * (d - 1 + i) / i;  // exact: prefix products of binomials divide
            if (c > (static_cast<__int128>(1) << 100))
                throw std::overflow_error("tau_d: value too large");
        }
        acc *= c;
        if (acc > (static_cast<__int128>(1) << 120))
            throw std::overflow_error("tau_d: value too large");
    }
    if (acc > INT64_MAX) throw std::overflow_error("tau_d: value exceeds int64");
    return static_cast<int64_t>(acc);
}

GrcAuditReport grc_audit(const CoefficientTable& table, const CoefficientTable& rs_table) {
    if (table.source != rs_table.source)
        throw std::invalid_argument("grc_audit: tables from different sources (" + table.source +
                                    " vs " + rs_table.source + ")");
    if (table.n_max != rs_table.n_max)
        throw std::invalid_argument("grc_audit: table lengths differ");

    GrcAuditReport rep;
    rep.n_checked = table.n_max;
    rep.rs_min_real = 0.0;
    constexpr double kSlack = 1e-9;
    auto spf = smallest_prime_factor(table.n_max);

    for (int64_t n = 1; n <= table.n_max; ++n) {
        double mod = std::abs(table.values[static_cast<size_t>(n)]);
        // tau_d(n) from the spf factorization, as a double (d small here)
        double td = 1.0;
        int64_t m = n;
        while (m > 1) {
            int64_t p = spf[static_cast<size_t>(m)];
            int r = 0;
            while (m % p == 0) { m /= p; ++r; }
            double c = 1.0;
            for (int i = 1; i <= r; ++i) c = c * (table.degree - 1 + i) / i;
            td *= c;
        }
        double ratio_tau = mod / td;
        if (ratio_tau > rep.max_ratio_tau) { rep.max_ratio_tau = ratio_tau; rep.argmax_tau = n; }
        if (ratio_tau > 1.0 + kSlack) ++rep.violations_tau;

        cplx rs = rs_table.values[static_cast<size_t>(n)];
        rep.rs_max_imag = std::max(rep.rs_max_imag, std::abs(rs.imag()));
        rep.rs_min_real = std::min(rep.rs_min_real, rs.real());
        double denom = std::max(rs.real(), 1e-300);
        double ratio_rs = mod * mod / denom;
        if (ratio_rs > rep.max_ratio_rs) { rep.max_ratio_rs = ratio_rs; rep.argmax_rs = n; }
        if (mod * mod > rs.real() * (1.0 + kSlack) + 1e-15) ++rep.violations_rs;
    }
    rep.rs_real_ok = rep.rs_max_imag <= 1e-11;
    rep.rs_nonneg_ok = rep.rs_min_real >= -1e-11;
    return rep;
}

const char* scan_kind_name(ScanKind k) {
    switch (k) {
        case ScanKind::prime_square: return "prime_square";
        case ScanKind::short_interval: return "short_interval";
        case ScanKind::boxplus_short: return "boxplus_short";
        case ScanKind::rough_sieve: return "rough_sieve";
        case ScanKind::rs_average: return "rs_average";
    }
    return "?";
}

std::vector<ScanRow> diagnostic_scan(const CoefficientTable& table, ScanKind kind,
                                     const ScanParams& params) {
    if (params.x_grid.empty()) throw std::invalid_argument("diagnostic_scan: empty X grid");
    int64_t x_top = *std::max_element(params.x_grid.begin(), params.x_grid.end());
    if (x_top > table.n_max)
        throw std::invalid_argument("diagnostic_scan: X exceeds table length");
    bool needs_y = kind == ScanKind::short_interval || kind == ScanKind::boxplus_short;
    if (needs_y && params.Y <= 0.0)
        throw std::invalid_argument("diagnostic_scan: this kind requires Y > 0");
    if (kind == ScanKind::rough_sieve && (params.P <= 0.0 || params.Q <= 0.0))
        throw std::invalid_argument("diagnostic_scan: rough_sieve requires P, Q");

    std::vector<ScanRow> rows;
    rows.reserve(params.x_grid.size());

    switch (kind) {
        case ScanKind::prime_square: {
            auto primes = sieve_primes(x_top);
            for (int64_t X : params.x_grid) {
                double obs = 0.0;
                for (int64_t p : primes) {
                    if (p > X) break;
                    obs += std::norm(table.values[static_cast<size_t>(p)]) *
                           std::log(static_cast<double>(p));
                }
                double ref = static_cast<double>(X);
                rows.push_back({static_cast<double>(X), obs, ref, obs / ref});
            }
            break;
        }
        case ScanKind::short_interval:
        case ScanKind::boxplus_short: {
            for (int64_t X : params.x_grid) {
                int64_t lo = std::max<int64_t>(1, X - static_cast<int64_t>(params.Y));
                double obs = 0.0;
                for (int64_t n = lo; n <= X; ++n)
                    obs += std::abs(table.values[static_cast<size_t>(n)]);
                double ref = kind == ScanKind::short_interval
                                 ? params.Y
                                 : params.Y * std::log(static_cast<double>(X));
                rows.push_back({static_cast<double>(X), obs, ref, obs / ref});
            }
            break;
        }
        case ScanKind::rough_sieve: {
            // mark integers with a prime factor in [P, Q]
            std::vector<bool> marked(static_cast<size_t>(x_top) + 1, false);
            double euler = 1.0;
            for (int64_t p : sieve_primes(static_cast<int64_t>(std::floor(params.Q)))) {
                if (static_cast<double>(p) < params.P) continue;
                euler *= 1.0 - 1.0 / static_cast<double>(p);
                for (int64_t m = p; m <= x_top; m += p) marked[static_cast<size_t>(m)] = true;
            }
            std::vector<int64_t> grid = params.x_grid;
            std::sort(grid.begin(), grid.end());
            double acc = 0.0;
            int64_t n = 1;
            for (int64_t X : grid) {
                for (; n <= X; ++n)
                    if (!marked[static_cast<size_t>(n)])
                        acc += std::norm(table.values[static_cast<size_t>(n)]);
                double ref = static_cast<double>(X) * euler;
                rows.push_back({static_cast<double>(X), acc, ref, acc / ref});
            }
            break;
        }
        case ScanKind::rs_average: {
            std::vector<int64_t> grid = params.x_grid;
            std::sort(grid.begin(), grid.end());
            // stabilization anchor: c_hat from the largest X
            double full = 0.0;
            for (int64_t n = 1; n <= grid.back(); ++n)
                full += table.values[static_cast<size_t>(n)].real();
            double c_hat = full / static_cast<double>(grid.back());
            double acc = 0.0;
            int64_t n = 1;
            for (int64_t X : grid) {
                for (; n <= X; ++n) acc += table.values[static_cast<size_t>(n)].real();
                double ref = c_hat * static_cast<double>(X);
                rows.push_back({static_cast<double>(X), acc, ref, acc / ref});
            }
            break;
        }
    }
    return rows;
}

}  // namespace lmlab
