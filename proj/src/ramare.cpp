#include "lmlab/ramare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lmlab/primes.hpp"

namespace lmlab {

int DecompositionParams::j_lo() const {
    return static_cast<int>(std::floor(H * std::log(P)));
}

int DecompositionParams::j_hi() const {
    return static_cast<int>(std::floor(H * std::log(Q)));
}

void DecompositionParams::validate() const {
    if (X < 1) throw std::invalid_argument("DecompositionParams: X must be >= 1");
    if (!(2.0 <= P && P <= Q && Q <= static_cast<double>(X)))
        throw std::invalid_argument("DecompositionParams: need 2 <= P <= Q <= X");
    if (!(H >= 1.0)) throw std::invalid_argument("DecompositionParams: need H >= 1");
    if (j_lo() > j_hi()) throw std::invalid_argument("DecompositionParams: empty j-range");
}

int omega_range(int64_t m, double P, double Q) { return omega_in_range(m, P, Q); }

Rat ramare_weight(int64_t n, double P, double Q) {
    if (n < 2) throw std::invalid_argument("ramare_weight: n must be >= 2");
    Rat total(0);
    for (const auto& [p, e] : factorize(n)) {
        (void)e;
        if (static_cast<double>(p) < P || static_cast<double>(p) > Q) continue;
        int64_t m = n / p;
        int denom = omega_in_range(m, P, Q) + (m % p != 0 ? 1 : 0);
        total += Rat(1, denom);
    }
    return total;
}

RamareDecomposition decompose(const CoefficientTable& table,
                              const DecompositionParams& params) {
    params.validate();
    int64_t n_hi = static_cast<int64_t>(std::ceil(static_cast<double>(params.X) *
                                                  std::exp(1.0 / params.H)));
    if (table.n_max < n_hi)
        throw std::invalid_argument("decompose: table must reach ceil(X e^{1/H}) = " +
                                    std::to_string(n_hi));

    RamareDecomposition d;
    d.params = params;
    d.n_hi = n_hi;
    d.source = table.source;
    d.f.assign(table.values.begin(), table.values.begin() + n_hi + 1);

    // omega_{[P,Q]} up to n_hi by marking prime multiples
    d.omega.assign(static_cast<size_t>(n_hi) + 1, 0);
    auto primes_q = sieve_primes(static_cast<int64_t>(std::floor(params.Q)));
    std::vector<int64_t> window_primes;
    for (int64_t p : primes_q) {
        if (static_cast<double>(p) < params.P) continue;
        window_primes.push_back(p);
        for (int64_t m = p; m <= n_hi; m += p) ++d.omega[static_cast<size_t>(m)];
    }

    int j_lo = params.j_lo(), j_hi = params.j_hi();
    d.q_pieces.resize(static_cast<size_t>(j_hi - j_lo + 1));
    d.f_pieces.resize(static_cast<size_t>(j_hi - j_lo + 1));
    for (int j = j_lo; j <= j_hi; ++j) {
        size_t idx = static_cast<size_t>(j - j_lo);
        d.q_pieces[idx].j = j;
        d.f_pieces[idx].j = j;
        d.f_pieces[idx].m_max = static_cast<int64_t>(std::floor(
            static_cast<double>(params.X) * std::exp(-static_cast<double>(j) / params.H)));
    }

    // each window prime lands in exactly one piece: j = floor(H log p)
    for (int64_t p : window_primes) {
        int j = static_cast<int>(std::floor(params.H * std::log(static_cast<double>(p))));
        if (j < j_lo || j > j_hi)
            throw std::logic_error("decompose: prime escaped the j-range");
        size_t idx = static_cast<size_t>(j - j_lo);
        d.q_pieces[idx].primes.push_back(p);
        d.q_pieces[idx].f_p.push_back(d.f[static_cast<size_t>(p)]);
    }

    // overcount triples: p in window j, m <= X e^{-j/H}, pm > X
    for (const auto& qp : d.q_pieces) {
        int64_t m_max = d.f_pieces[static_cast<size_t>(qp.j - j_lo)].m_max;
        for (int64_t p : qp.primes) {
            for (int64_t m = params.X / p + 1; m <= m_max; ++m)
                d.overcounts.push_back({p, m, qp.j});
        }
    }

    // pm-corrections at n = pm <= X with p | m
    for (int64_t p : window_primes) {
        for (int64_t m = p; m <= params.X / p; m += p) {
            int64_t n = p * m;
            int om = d.omega[static_cast<size_t>(m)];  // >= 1 since p | m
            cplx val = d.f[static_cast<size_t>(n)] / static_cast<double>(om) -
                       d.f[static_cast<size_t>(p)] * d.f[static_cast<size_t>(m)] /
                           static_cast<double>(om + 1);
            d.pm_corrections.push_back({p, m, val});
        }
    }

    // rough part: no prime factor in the window
    for (int64_t n = 1; n <= params.X; ++n)
        if (d.omega[static_cast<size_t>(n)] == 0) d.rough.push_back(n);

    return d;
}

int64_t RamareDecomposition::q_support_total() const {
    int64_t total = 0;
    for (const auto& qp : q_pieces) total += static_cast<int64_t>(qp.primes.size());
    return total;
}

ReassemblyResult reassemble(const RamareDecomposition& d) {
    ReassemblyResult res;
    res.combined.assign(static_cast<size_t>(d.n_hi) + 1, cplx(0.0, 0.0));
    int j_lo = d.params.j_lo();

    // sum_j Q_{j,H} * F_{j,H} as a coefficient convolution
    for (const auto& qp : d.q_pieces) {
        int64_t m_max = d.f_pieces[static_cast<size_t>(qp.j - j_lo)].m_max;
        for (size_t i = 0; i < qp.primes.size(); ++i) {
            int64_t p = qp.primes[i];
            cplx fp = qp.f_p[i];
            for (int64_t m = 1; m <= m_max; ++m) {
                res.combined[static_cast<size_t>(p * m)] +=
                    fp * d.f[static_cast<size_t>(m)] /
                    static_cast<double>(d.omega[static_cast<size_t>(m)] + 1);
            }
        }
    }
    // minus the overcount
    for (const auto& oc : d.overcounts) {
        res.combined[static_cast<size_t>(oc.p * oc.m)] -=
            d.f[static_cast<size_t>(oc.p)] * d.f[static_cast<size_t>(oc.m)] /
            static_cast<double>(d.omega[static_cast<size_t>(oc.m)] + 1);
    }
    // plus corrections and the rough part
    for (const auto& c : d.pm_corrections)
        res.combined[static_cast<size_t>(c.p * c.m)] += c.value;
    for (int64_t n : d.rough) res.combined[static_cast<size_t>(n)] += d.f[static_cast<size_t>(n)];

    for (int64_t n = 1; n <= d.n_hi; ++n) {
        cplx target = n <= d.params.X ? d.f[static_cast<size_t>(n)] : cplx(0.0, 0.0);
        double dev = std::abs(res.combined[static_cast<size_t>(n)] - target) /
                     (1.0 + std::abs(d.f[static_cast<size_t>(n)]));
        if (dev > res.max_rel_dev) {
            res.max_rel_dev = dev;
            res.argmax = n;
        }
    }
    return res;
}

void check_reassembly(const RamareDecomposition& d, double tol) {
    auto r = reassemble(d);
    if (r.max_rel_dev > tol)
        throw std::runtime_error("reassemble: deviation " + std::to_string(r.max_rel_dev) +
                                 " at n=" + std::to_string(r.argmax) +
                                 " exceeds tolerance (decomposition bug)");
}

Rat reassemble_exact_max_dev(const RamareDecomposition& d) {
    // requires integer-valued f
    std::vector<int64_t> fi(static_cast<size_t>(d.n_hi) + 1, 0);
    for (int64_t n = 1; n <= d.n_hi; ++n) {
        const cplx& v = d.f[static_cast<size_t>(n)];
        double r = std::round(v.real());
        if (v.imag() != 0.0 || v.real() != r)
            throw std::invalid_argument("reassemble_exact_max_dev: table is not integer-valued");
        fi[static_cast<size_t>(n)] = static_cast<int64_t>(r);
    }
    std::vector<Rat> combined(static_cast<size_t>(d.n_hi) + 1, Rat(0));
    int j_lo = d.params.j_lo();
    for (const auto& qp : d.q_pieces) {
        int64_t m_max = d.f_pieces[static_cast<size_t>(qp.j - j_lo)].m_max;
        for (int64_t p : qp.primes)
            for (int64_t m = 1; m <= m_max; ++m)
                combined[static_cast<size_t>(p * m)] +=
                    Rat(fi[static_cast<size_t>(p)] * fi[static_cast<size_t>(m)],
                        d.omega[static_cast<size_t>(m)] + 1);
    }
    for (const auto& oc : d.overcounts)
        combined[static_cast<size_t>(oc.p * oc.m)] -=
            Rat(fi[static_cast<size_t>(oc.p)] * fi[static_cast<size_t>(oc.m)],
                d.omega[static_cast<size_t>(oc.m)] + 1);
    for (const auto& c : d.pm_corrections) {
        int64_t n = c.p * c.m;
        int om = d.omega[static_cast<size_t>(c.m)];
        combined[static_cast<size_t>(n)] += Rat(fi[static_cast<size_t>(n)], om);
        combined[static_cast<size_t>(n)] -=
            Rat(fi[static_cast<size_t>(c.p)] * fi[static_cast<size_t>(c.m)], om + 1);
    }
    for (int64_t n : d.rough) combined[static_cast<size_t>(n)] += Rat(fi[static_cast<size_t>(n)]);

    Rat max_dev(0);
    for (int64_t n = 1; n <= d.n_hi; ++n) {
        Rat target(n <= d.params.X ? fi[static_cast<size_t>(n)] : 0);
        Rat dev = combined[static_cast<size_t>(n)] - target;
        if (dev.num < 0) dev = Rat(0) - dev;
        if (dev.to_double() > max_dev.to_double()) max_dev = dev;
    }
    return max_dev;
}

SelectedParams select_parameters(double X, int d, ParamMode mode, double beta, double eps,
                                 std::optional<DecompositionParams> desk) {
    if (!(X >= 16.0)) throw std::invalid_argument("select_parameters: X must be >= 16");
    if (d < 1) throw std::invalid_argument("select_parameters: d must be >= 1");

    SelectedParams out;
    out.mode = mode;
    out.X = X;
    out.d = d;
    out.beta = beta;
    out.eps = eps;
    double lx = std::log(X);
    out.Z = lx;
    out.Q = std::exp(lx / std::log(lx));

    switch (mode) {
        case ParamMode::paper: {
            double rho = 1.0 / (100.0 * d * d * d);
            double expo = rho / (3.0 * d + 2.0);
            out.P = std::exp(std::pow(lx, 1.0 - expo));
            out.H = std::pow(lx, expo);
            break;
        }
        case ParamMode::paper_beta: {
            if (!(beta + eps < 1.0))
                throw std::invalid_argument("select_parameters: need beta + eps < 1");
            out.P = std::exp(std::pow(lx, beta + eps));
            out.H = lx;
            break;
        }
        case ParamMode::desk: {
            if (!desk) throw std::invalid_argument("select_parameters: desk mode needs overrides");
            desk->validate();
            if (!(desk->P < desk->Q))
                throw std::invalid_argument("select_parameters: desk overrides need P < Q");
            out.P = desk->P;
            out.Q = desk->Q;
            out.H = desk->H;
            break;
        }
    }
    out.infeasible = !(out.P < out.Q);
    return out;
}

}  // namespace lmlab
