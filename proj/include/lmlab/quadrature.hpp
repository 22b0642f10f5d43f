#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace lmlab {

// Composite-Simpson quadrature with step-halving refinement. Deterministic:
// fixed grids, pairwise-summed weighted values. Adaptive subdivision is
// deliberately avoided.
struct QuadratureSpec {
    double base_step = 0.1;
    double tol_rel = 1e-3;
    int max_refinements = 6;
};

struct QuadResult {
    double value = 0.0;
    int refinements = 0;
    bool converged = false;
    double last_change = 0.0;  // |S_k - S_{k-1}| / max(|S_k|, eps)
    double step = 0.0;         // final step used
};

struct QuadResultC {
    std::complex<double> value{0.0, 0.0};
    int refinements = 0;
    bool converged = false;
    double last_change = 0.0;
    double step = 0.0;
};

// batch_f fills out[i] = f(ts[i]); the engine halves the step until the
// relative change drops below tol_rel or max_refinements is exhausted.
// step_cap additionally clamps the first step (oscillation resolution).
QuadResult simpson_converge(
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& batch_f,
    double a, double b, const QuadratureSpec& spec, double step_cap);

QuadResultC simpson_converge_complex(
    const std::function<void(const std::vector<double>&, std::vector<std::complex<double>>&)>&
        batch_f,
    double a, double b, const QuadratureSpec& spec, double step_cap);

}  // namespace lmlab
