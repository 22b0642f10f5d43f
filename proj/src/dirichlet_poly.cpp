#include "lmlab/dirichlet_poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lmlab/primes.hpp"

namespace lmlab {

DirichletPolynomial::DirichletPolynomial(std::vector<cplx> coeffs_1_indexed,
                                         std::string provenance)
    : prov_(std::move(provenance)) {
    if (coeffs_1_indexed.size() < 2)
        throw std::invalid_argument("DirichletPolynomial: need at least one coefficient");
    coeff_ = std::move(coeffs_1_indexed);
    coeff_[0] = cplx(0.0, 0.0);
    n_max_ = static_cast<int64_t>(coeff_.size()) - 1;
    for (int64_t n = 1; n <= n_max_; ++n) {
        const cplx& a = coeff_[static_cast<size_t>(n)];
        if (a == cplx(0.0, 0.0)) continue;
        term_log_.push_back(std::log(static_cast<double>(n)));
        term_coeff_.push_back(a);
        abs_sum_ += std::abs(a);
        sq_sum_ += std::norm(a);
    }
}

cplx DirichletPolynomial::evaluate(double t) const {
    // fixed blocks of 1024 terms, pairwise within, left-to-right across
    constexpr size_t kBlock = 1024;
    std::vector<cplx> blocks;
    blocks.reserve(term_log_.size() / kBlock + 1);
    std::vector<cplx> scratch;
    scratch.reserve(kBlock);
    for (size_t b = 0; b < term_log_.size(); b += kBlock) {
        size_t e = std::min(term_log_.size(), b + kBlock);
        scratch.clear();
        for (size_t i = b; i < e; ++i)
            scratch.push_back(term_coeff_[i] * std::polar(1.0, -t * term_log_[i]));
        blocks.push_back(pairwise_sum(scratch));
    }
    return pairwise_sum(blocks);
}

void DirichletPolynomial::accelerated_chunk(const std::vector<double>& t, size_t lo,
                                            size_t hi, std::vector<cplx>& out) const {
    double t0 = t[lo];
    double dt = hi > lo + 1 ? t[lo + 1] - t[lo] : 0.0;
    for (size_t i = 0; i < term_log_.size(); ++i) {
        double ln = term_log_[i];
        cplx z = term_coeff_[i] * std::polar(1.0, -t0 * ln);
        cplx w = std::polar(1.0, -dt * ln);
        for (size_t k = lo; k < hi; ++k) {
            out[k] += z;
            z *= w;
        }
    }
}

std::vector<cplx> DirichletPolynomial::multi_evaluate(const std::vector<double>& t_grid,
                                                      EvalPath path) const {
    for (size_t i = 1; i < t_grid.size(); ++i)
        if (t_grid[i] < t_grid[i - 1])
            throw std::invalid_argument("multi_evaluate: grid not sorted");
    std::vector<cplx> out(t_grid.size(), cplx(0.0, 0.0));
    if (t_grid.empty()) return out;

    bool uniform = true;
    if (t_grid.size() >= 3) {
        double d0 = t_grid[1] - t_grid[0];
        double scale = std::max(1.0, std::abs(t_grid.back()) + std::abs(t_grid.front()));
        for (size_t i = 2; i < t_grid.size(); ++i) {
            if (std::abs((t_grid[i] - t_grid[i - 1]) - d0) > 1e-12 * scale) {
                uniform = false;
                break;
            }
        }
    }
    bool accelerated = path == EvalPath::accelerated ||
                       (path == EvalPath::automatic && uniform && t_grid.size() >= 16);
    if (accelerated && !uniform)
        throw std::invalid_argument("multi_evaluate: accelerated path needs a uniform grid");

    if (!accelerated) {
        parallel_chunks(t_grid.size(), 256, [&](size_t, size_t lo, size_t hi) {
            for (size_t k = lo; k < hi; ++k) out[k] = evaluate(t_grid[k]);
        });
    } else {
        // chunked phase rotation: exact phases at each chunk head, one complex
        // multiply per grid step inside the chunk
        parallel_chunks(t_grid.size(), 1024, [&](size_t, size_t lo, size_t hi) {
            accelerated_chunk(t_grid, lo, hi, out);
        });
    }
    return out;
}

DirichletPolynomial from_table(const CoefficientTable& table, int64_t X) {
    if (X < 1) throw std::invalid_argument("from_table: X must be >= 1");
    if (X > table.n_max) throw std::invalid_argument("from_table: X exceeds table length");
    std::vector<cplx> c(static_cast<size_t>(X) + 1, cplx(0.0, 0.0));
    for (int64_t n = 1; n <= X; ++n) c[static_cast<size_t>(n)] = table.values[static_cast<size_t>(n)];
    return DirichletPolynomial(std::move(c),
                               table.source + "[X=" + std::to_string(X) + "]");
}

double poly_step_cap(const DirichletPolynomial& poly) {
    double logN = std::log(std::max<double>(2.0, static_cast<double>(poly.support_length())));
    return std::min(0.1, 1.0 / (4.0 * logN));
}

namespace {

MomentResult weighted_moment_impl(const DirichletPolynomial& poly, double a, double b,
                                  double alpha, const QuadratureSpec& quad) {
    auto batch = [&](const std::vector<double>& ts, std::vector<double>& out) {
        auto vals = poly.multi_evaluate(ts);
        for (size_t i = 0; i < ts.size(); ++i) {
            double v = std::norm(vals[i]);
            if (alpha != 0.0) v *= std::pow(ts[i], -alpha);
            out[i] = v;
        }
    };
    auto r = simpson_converge(batch, a, b, quad, poly_step_cap(poly));
    return {r.value, r.converged, r.refinements, r.last_change, r.step};
}

}  // namespace

MomentResult second_moment(const DirichletPolynomial& poly, double T1, double T2,
                           const QuadratureSpec& quad) {
    if (!(T1 < T2)) throw std::invalid_argument("second_moment: need T1 < T2");
    return weighted_moment_impl(poly, T1, T2, 0.0, quad);
}

MomentResult weighted_second_moment(const DirichletPolynomial& poly, double T, double alpha,
                                    const QuadratureSpec& quad) {
    if (!(T > 1.0)) throw std::invalid_argument("weighted_second_moment: need T > 1");
    return weighted_moment_impl(poly, 1.0, T, alpha, quad);
}

double mvt_ratio(const DirichletPolynomial& poly, int64_t block_start, double T,
                 const QuadratureSpec& quad) {
    if (!(T > 0.0)) throw std::invalid_argument("mvt_ratio: need T > 0");
    if (poly.coeff_sq_sum() <= 0.0)
        throw std::invalid_argument("mvt_ratio: zero coefficient mass");
    const auto& c = poly.coeffs();
    for (int64_t n = 1; n < static_cast<int64_t>(c.size()); ++n) {
        if (c[static_cast<size_t>(n)] != cplx(0.0, 0.0) &&
            (n < block_start || n > 2 * block_start))
            throw std::invalid_argument("mvt_ratio: support outside [N, 2N]");
    }
    auto m = second_moment(poly, 0.0, T, quad);
    return m.value / ((T + static_cast<double>(block_start)) * poly.coeff_sq_sum());
}

cplx twisted_prime_sum(const CoefficientTable& table, double P, double Q, double t) {
    if (P > Q) throw std::invalid_argument("twisted_prime_sum: P > Q");
    if (P < 2.0 || Q > static_cast<double>(table.n_max))
        throw std::invalid_argument("twisted_prime_sum: window outside [2, N]");
    std::vector<cplx> terms;
    for (int64_t p : sieve_primes(static_cast<int64_t>(std::floor(Q)))) {
        if (static_cast<double>(p) < P) continue;
        terms.push_back(table.values[static_cast<size_t>(p)] *
                        std::polar(1.0, -t * std::log(static_cast<double>(p))));
    }
    return pairwise_sum(terms);
}

}  // namespace lmlab
