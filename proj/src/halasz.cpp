#include "lmlab/halasz.hpp"

#include <cmath>
#include <stdexcept>

#include "lmlab/constants.hpp"
#include "lmlab/dirichlet_poly.hpp"
#include "lmlab/primes.hpp"
#include "lmlab/util.hpp"

namespace lmlab {

namespace {

// D(t) = sum_p (|lambda(p)| - Re(lambda(p) p^{-it}))/p. The direct path sums
// the summands themselves (each is exactly 0.0 at a perfect twist, so exact
// minima survive); the scan path goes through the polynomial evaluator as
// c0 - Re E(t), which is faster on uniform grids but carries ~1e-15 drift.
struct DistanceKernel {
    double c0 = 0.0;
    std::vector<double> weighted_mod;   // |lambda(p)|/p
    std::vector<cplx> weighted_coeff;   // lambda(p)/p
    std::vector<double> logs;
    DirichletPolynomial poly;

    DistanceKernel(const CoefficientTable& table, int64_t X)
        : poly(build(table, X), "halasz(" + table.source + ")") {
        for (int64_t p : sieve_primes(X)) {
            cplx lam = table.values[static_cast<size_t>(p)];
            weighted_mod.push_back(std::abs(lam) / static_cast<double>(p));
            weighted_coeff.push_back(lam / static_cast<double>(p));
            logs.push_back(std::log(static_cast<double>(p)));
        }
        c0 = pairwise_sum(weighted_mod);
    }

    // exact finite sum over primes, term by term
    double operator()(double t) const {
        std::vector<double> terms(weighted_mod.size());
        for (size_t i = 0; i < terms.size(); ++i) {
            double cs = std::cos(t * logs[i]);
            double sn = std::sin(t * logs[i]);
            // Re(lambda(p) e^{-i t log p}) / p
            double re = weighted_coeff[i].real() * cs + weighted_coeff[i].imag() * sn;
            terms[i] = weighted_mod[i] - re;
        }
        return pairwise_sum(terms);
    }

    void eval_grid(const std::vector<double>& ts, std::vector<double>& out) const {
        auto vals = poly.multi_evaluate(ts, DirichletPolynomial::EvalPath::automatic);
        out.resize(ts.size());
        for (size_t i = 0; i < ts.size(); ++i) out[i] = c0 - vals[i].real();
    }

  private:
    static std::vector<cplx> build(const CoefficientTable& table, int64_t X) {
        if (X < 2 || X > table.n_max)
            throw std::invalid_argument("halasz: X outside [2, table length]");
        std::vector<cplx> c(static_cast<size_t>(X) + 1, cplx(0.0, 0.0));
        bool any = false;
        for (int64_t p : sieve_primes(X)) {
            cplx lam = table.values[static_cast<size_t>(p)];
            if (lam != cplx(0.0, 0.0)) any = true;
            c[static_cast<size_t>(p)] = lam / static_cast<double>(p);
        }
        if (!any)
            throw std::invalid_argument("halasz: degenerate all-zero coefficient table");
        return c;
    }
};

double golden_refine(const DistanceKernel& kernel, double lo, double hi, double& best_t,
                     double& best_v) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = kernel(x1), f2 = kernel(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a);
            f1 = kernel(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a);
            f2 = kernel(x2);
        }
    }
    double xm = f1 <= f2 ? x1 : x2;
    double fm = std::min(f1, f2);
    if (fm < best_v) { best_v = fm; best_t = xm; }
    return fm;
}

}  // namespace

double halasz_distance(const CoefficientTable& table, int64_t X, double t) {
    DistanceKernel k(table, X);
    return k(t);
}

HalaszProfile halasz_minimize(const CoefficientTable& table, int64_t X, double t_bound,
                              double target_accuracy) {
    if (t_bound <= 0.0) t_bound = std::min(static_cast<double>(X), 1e3);
    if (target_accuracy <= 0.0)
        throw std::invalid_argument("halasz_minimize: target_accuracy must be > 0");

    DistanceKernel kernel(table, X);
    int d = table.degree;
    double logX = std::log(static_cast<double>(X));
    double delta = target_accuracy / (2.0 * d * (logX + 1.0));
    int64_t K = static_cast<int64_t>(std::ceil(t_bound / delta));
    int64_t total = 2 * K + 1;
    if (total > (int64_t{1} << 27))
        throw std::invalid_argument("halasz_minimize: scan grid exceeds 2^27 points; "
                                    "shrink t_bound or relax target_accuracy");

    HalaszProfile prof;
    prof.X = X;
    prof.degree = d;
    prof.t_bound = t_bound;
    prof.delta = delta;
    prof.target_accuracy = target_accuracy;

    // streamed scan in uniform chunks; keep the global top-3 local minima
    constexpr size_t kChunk = 1 << 14;
    size_t n_chunks = (static_cast<size_t>(total) + kChunk - 1) / kChunk;
    struct ChunkBest {
        double v[3] = {1e300, 1e300, 1e300};
        double t[3] = {0, 0, 0};
        double min_v = 1e300;
        void offer(double val, double at) {
            if (val < v[0]) { v[2]=v[1]; t[2]=t[1]; v[1]=v[0]; t[1]=t[0]; v[0]=val; t[0]=at; }
            else if (val < v[1]) { v[2]=v[1]; t[2]=t[1]; v[1]=val; t[1]=at; }
            else if (val < v[2]) { v[2]=val; t[2]=at; }
        }
    };
    std::vector<ChunkBest> bests(n_chunks);

    size_t stride = static_cast<size_t>(std::max<int64_t>(1, total / (1 << 17)));
    std::vector<std::vector<std::pair<double, double>>> kept(n_chunks);

    parallel_chunks(static_cast<size_t>(total), kChunk, [&](size_t ci, size_t lo, size_t hi) {
        std::vector<double> ts(hi - lo);
        for (size_t i = lo; i < hi; ++i)
            ts[i - lo] = (static_cast<double>(static_cast<int64_t>(i) - K)) * delta;
        std::vector<double> dv;
        kernel.eval_grid(ts, dv);
        ChunkBest& cb = bests[ci];
        for (size_t i = 0; i < dv.size(); ++i) {
            cb.offer(dv[i], ts[i]);
            cb.min_v = std::min(cb.min_v, dv[i]);
            if ((lo + i) % stride == 0) kept[ci].emplace_back(ts[i], dv[i]);
        }
    });

    ChunkBest global;
    double grid_min = 1e300;
    for (const auto& cb : bests) {
        grid_min = std::min(grid_min, cb.min_v);
        for (int i = 0; i < 3; ++i) global.offer(cb.v[i], cb.t[i]);
    }
    for (auto& kc : kept)
        for (auto& [t, v] : kc) {
            prof.grid_t.push_back(t);
            prof.grid_d.push_back(v);
        }
    prof.grid_min = grid_min;

    // re-evaluate the scan candidates with the exact summand form, then
    // golden-section refine; strict improvement only, so exact grid minima
    // (e.g. D(0) = 0) are kept verbatim
    double best_t = 0.0, best_v = 1e300;
    for (int i = 0; i < 3; ++i) {
        if (global.v[i] >= 1e300) continue;
        double center = global.t[i];
        double lo = std::max(-t_bound, center - delta);
        double hi = std::min(t_bound, center + delta);
        double cand_t = center, cand_v = kernel(center);
        golden_refine(kernel, lo, hi, cand_t, cand_v);
        if (cand_v < best_v || (cand_v == best_v && std::abs(cand_t) < std::abs(best_t))) {
            best_v = cand_v;
            best_t = cand_t;
        }
    }
    prof.t0 = best_t;
    prof.m_value = best_v;
    prof.boundary_hit = std::abs(std::abs(best_t) - t_bound) <= delta;
    return prof;
}

HalaszAudit lower_bound_audit(const HalaszProfile& prof, int d, double eps) {
    HalaszAudit audit;
    audit.kappa_d = kappa_constant(d);
    audit.eps = eps;
    double logX = std::log(static_cast<double>(prof.X));
    double loglogX = std::log(logX);
    audit.min_slack = 1e300;
    audit.rows.reserve(prof.grid_t.size());
    for (size_t i = 0; i < prof.grid_t.size(); ++i) {
        double t = prof.grid_t[i];
        double bound = (audit.kappa_d - eps) *
                       std::min(loglogX, std::log(1.0 + std::abs(t - prof.t0) * logX));
        double slack = prof.grid_d[i] - bound;
        audit.rows.push_back({t, prof.grid_d[i], bound, slack});
        audit.min_slack = std::min(audit.min_slack, slack);
    }
    return audit;
}

}  // namespace lmlab
