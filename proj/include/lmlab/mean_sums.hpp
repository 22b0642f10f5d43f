#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "lmlab/coeff_table.hpp"
#include "lmlab/quadrature.hpp"
#include "lmlab/util.hpp"

namespace lmlab {

// Smooth cutoff: W = 1 on [0, X], transitions to 0 across [X, X+Y] through
// the C-infinity bump quotient psi(v) = f(1-v)/(f(v)+f(1-v)), f(v) = e^{-1/v}.
struct SmoothWindow {
    double X = 0.0;
    double Y = 0.0;

    static double psi(double v);
    double operator()(double u) const;
    double derivative_estimate(double u, double h) const;  // central difference
};

SmoothWindow smooth_window(double X, double Y);

struct MellinResult {
    cplx value{0.0, 0.0};
    bool converged = false;
    int refinements = 0;
};

// W~(s) = int_0^inf W(u) u^{s-1} du = X^s/s + transition integral; the
// transition part is Simpson with an oscillation-resolving first step.
MellinResult mellin(const SmoothWindow& window, cplx s, const QuadratureSpec& quad);

struct DecayRow {
    double t;
    double modulus;   // |W~(1/2+it)|
    double bound_j;   // (Y/(|t|^j sqrt(X))) (X/Y)^j
};

struct DecayAudit {
    std::vector<DecayRow> rows;
    double fitted_exponent = 0.0;  // OLS slope of -log|W~| against log t
    int j = 1;
};

DecayAudit window_decay_audit(const SmoothWindow& window, int j,
                              const std::vector<double>& t_list, const QuadratureSpec& quad);

// sum_{n<=X} lambda_{1 boxplus pi}(n), computed both through the boxplus
// divisor sieve and as sum_{l<=X} lambda(l) floor(X/l); the two must agree to
// 1e-9 relative or std::runtime_error is thrown.
cplx boxplus_partial_sum(const CoefficientTable& table, int64_t X);

struct MainTermFit {
    cplx c_fit{0.0, 0.0};       // least squares of S(X) ~ c X over the grid
    cplx c_smoothed{0.0, 0.0};  // sum lambda(n) e^{-n/N0}/n, N0 = N/10
    double gap = 0.0;           // |c_fit - c_smoothed|
    double fit_rms = 0.0;       // rms of |S(X) - c X| over the grid
    struct Row {
        int64_t X;
        cplx S;
        double residual;  // |S(X) - c_fit X|
    };
    std::vector<Row> rows;
};

// Rejects degree-1 all-ones tables (double pole; no linear main term).
MainTermFit main_term_fit(const CoefficientTable& table, const std::vector<int64_t>& x_grid);

// Y = X^{d/(d+2)} (log log X)^{2/(d+2)} / (log X)^{(2+2 eta)/(d+2)}.
double choose_Y(double X, int d, double eta);

struct ErrorScanRow {
    int64_t X;
    double residual;   // |S(X) - c X|
    double envelope;   // X^{d/(d+2)}
    double ratio;
};

struct ErrorExponentScan {
    std::vector<ErrorScanRow> rows;
    double fitted_exponent = 0.0;  // OLS slope of log residual against log X
};

ErrorExponentScan error_exponent_scan(const CoefficientTable& table,
                                      const std::vector<int64_t>& x_grid);

}  // namespace lmlab
