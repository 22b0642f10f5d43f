#include "lmlab/mean_sums.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lmlab {

double SmoothWindow::psi(double v) {
    auto f = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    double fv = f(v), fw = f(1.0 - v);
    return fw / (fv + fw);
}

double SmoothWindow::operator()(double u) const {
    if (u <= X) return 1.0;
    if (u >= X + Y) return 0.0;
    return psi((u - X) / Y);
}

double SmoothWindow::derivative_estimate(double u, double h) const {
    return ((*this)(u + h) - (*this)(u - h)) / (2.0 * h);
}

SmoothWindow smooth_window(double X, double Y) {
    if (!(Y > 0.0)) throw std::invalid_argument("smooth_window: need Y > 0");
    if (!(Y <= X)) throw std::invalid_argument("smooth_window: need Y <= X");
    return SmoothWindow{X, Y};
}

MellinResult mellin(const SmoothWindow& w, cplx s, const QuadratureSpec& quad) {
    if (!(s.real() > 0.0)) throw std::invalid_argument("mellin: need Re(s) > 0");
    // closed piece over [0, X] where W == 1: X^s / s
    cplx closed = std::pow(cplx(w.X, 0.0), s) / s;

    double t = std::abs(s.imag());
    double cap = (w.X + w.Y) * std::min(0.1, 1.0 / (4.0 * t + 4.0));
    cap = std::min(cap, w.Y / 8.0);  // always resolve the bump itself
    auto batch = [&](const std::vector<double>& us, std::vector<cplx>& out) {
        for (size_t i = 0; i < us.size(); ++i) {
            double u = us[i];
            out[i] = w(u) * std::pow(cplx(u, 0.0), s - cplx(1.0, 0.0));
        }
    };
    auto r = simpson_converge_complex(batch, w.X, w.X + w.Y, quad, cap);
    return {closed + r.value, r.converged, r.refinements};
}

DecayAudit window_decay_audit(const SmoothWindow& w, int j,
                              const std::vector<double>& t_list,
                              const QuadratureSpec& quad) {
    if (j < 1) throw std::invalid_argument("window_decay_audit: need j >= 1");
    DecayAudit audit;
    audit.j = j;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double t : t_list) {
        auto m = mellin(w, cplx(0.5, t), quad);
        double mod = std::abs(m.value);
        double bound = w.Y / (std::pow(std::abs(t), j) * std::sqrt(w.X)) *
                       std::pow(w.X / w.Y, j);
        audit.rows.push_back({t, mod, bound});
        if (mod > 0.0 && t > 0.0) {
            double lx = std::log(t), ly = std::log(mod);
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
            ++n;
        }
    }
    if (n >= 2) {
        double denom = n * sxx - sx * sx;
        if (denom != 0.0) audit.fitted_exponent = -(n * sxy - sx * sy) / denom;
    }
    return audit;
}

cplx boxplus_partial_sum(const CoefficientTable& table, int64_t X) {
    if (X < 1 || X > table.n_max)
        throw std::invalid_argument("boxplus_partial_sum: X outside table");

    // route 1: divisor sieve, then sum
    auto bp = boxplus_coeffs(table, X);
    std::vector<cplx> terms(static_cast<size_t>(X));
    for (int64_t n = 1; n <= X; ++n) terms[static_cast<size_t>(n - 1)] = bp.values[static_cast<size_t>(n)];
    cplx s1 = pairwise_sum(terms);

    // route 2: sum_l lambda(l) floor(X/l)
    for (int64_t l = 1; l <= X; ++l)
        terms[static_cast<size_t>(l - 1)] =
            table.values[static_cast<size_t>(l)] * static_cast<double>(X / l);
    cplx s2 = pairwise_sum(terms);

    double dev = std::abs(s1 - s2) / std::max(1.0, std::max(std::abs(s1), std::abs(s2)));
    if (dev > 1e-9)
        throw std::runtime_error("boxplus_partial_sum: dual-route disagreement " +
                                 std::to_string(dev) + " at X=" + std::to_string(X));
    return s1;
}

MainTermFit main_term_fit(const CoefficientTable& table, const std::vector<int64_t>& x_grid) {
    if (x_grid.empty()) throw std::invalid_argument("main_term_fit: empty grid");
    if (table.degree == 1) {
        bool all_ones = true;
        for (int64_t n = 1; n <= table.n_max && all_ones; ++n)
            if (table.values[static_cast<size_t>(n)] != cplx(1.0, 0.0)) all_ones = false;
        if (all_ones)
            throw std::invalid_argument(
                "main_term_fit: degree-1 all-ones table has a double pole, no linear main term");
    }
    int64_t x_top = *std::max_element(x_grid.begin(), x_grid.end());
    if (x_top > table.n_max) throw std::invalid_argument("main_term_fit: grid exceeds table");

    // S(X) at all grid points from one boxplus prefix pass
    auto bp = boxplus_coeffs(table, x_top);
    std::vector<int64_t> grid = x_grid;
    std::sort(grid.begin(), grid.end());
    std::vector<cplx> s_at(grid.size());
    {
        cplx acc(0.0, 0.0);
        int64_t n = 1;
        for (size_t gi = 0; gi < grid.size(); ++gi) {
            for (; n <= grid[gi]; ++n) acc += bp.values[static_cast<size_t>(n)];
            s_at[gi] = acc;
        }
    }

    MainTermFit fit;
    double sxx = 0.0;
    cplx sxy(0.0, 0.0);
    for (size_t i = 0; i < grid.size(); ++i) {
        double x = static_cast<double>(grid[i]);
        sxx += x * x;
        sxy += s_at[i] * x;
    }
    fit.c_fit = sxy / sxx;

    // smoothed Dirichlet-series estimate
    int64_t N = table.n_max;
    double N0 = static_cast<double>(N) / 10.0;
    std::vector<cplx> terms(static_cast<size_t>(N));
    for (int64_t n = 1; n <= N; ++n)
        terms[static_cast<size_t>(n - 1)] = table.values[static_cast<size_t>(n)] *
                                            std::exp(-static_cast<double>(n) / N0) /
                                            static_cast<double>(n);
    fit.c_smoothed = pairwise_sum(terms);
    fit.gap = std::abs(fit.c_fit - fit.c_smoothed);

    double rss = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        double resid = std::abs(s_at[i] - fit.c_fit * static_cast<double>(grid[i]));
        fit.rows.push_back({grid[i], s_at[i], resid});
        rss += resid * resid;
    }
    fit.fit_rms = std::sqrt(rss / static_cast<double>(grid.size()));
    return fit;
}

double choose_Y(double X, int d, double eta) {
    if (!(X >= 16.0)) throw std::invalid_argument("choose_Y: need X >= 16");
    double dd = static_cast<double>(d);
    double lx = std::log(X);
    return std::pow(X, dd / (dd + 2.0)) * std::pow(std::log(lx), 2.0 / (dd + 2.0)) /
           std::pow(lx, (2.0 + 2.0 * eta) / (dd + 2.0));
}

ErrorExponentScan error_exponent_scan(const CoefficientTable& table,
                                      const std::vector<int64_t>& x_grid) {
    auto fit = main_term_fit(table, x_grid);
    ErrorExponentScan scan;
    double d = static_cast<double>(table.degree);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& row : fit.rows) {
        double env = std::pow(static_cast<double>(row.X), d / (d + 2.0));
        scan.rows.push_back({row.X, row.residual, env, row.residual / env});
        if (row.residual > 0.0) {
            double lx = std::log(static_cast<double>(row.X)), ly = std::log(row.residual);
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
            ++n;
        }
    }
    if (n >= 2) {
        double denom = n * sxx - sx * sx;
        if (denom != 0.0) scan.fitted_exponent = (n * sxy - sx * sy) / denom;
    }
    return scan;
}

}  // namespace lmlab
