#pragma once

#include <cstdint>
#include <vector>

#include "lmlab/coeff_table.hpp"

namespace lmlab {

// Sampled pretentious-distance curve. The scan grid can be huge; the stored
// copy is decimated to at most ~2^17 rows (t0/M come from the full scan).
struct HalaszProfile {
    int64_t X = 0;
    int degree = 0;
    double t_bound = 0.0;
    double delta = 0.0;            // scan spacing
    double target_accuracy = 0.0;
    std::vector<double> grid_t;    // decimated
    std::vector<double> grid_d;    // D at the decimated points
    double grid_min = 0.0;         // min D over the FULL scan grid
    double t0 = 0.0;
    double m_value = 0.0;
    bool boundary_hit = false;     // minimizer within one spacing of the box edge
};

// D(t) = sum_{p<=X} (|lambda(p)| - Re(lambda(p) p^{-it}))/p, exact finite sum.
double halasz_distance(const CoefficientTable& table, int64_t X, double t);

// Lipschitz-safe scan (spacing target_accuracy/(2d(log X + 1))) over
// [-t_bound, t_bound] with 0 on the grid, then golden-section refinement
// around the three best local minima. Ties break toward smallest |t0|.
// t_bound <= 0 selects the desk default min(X, 1e3).
HalaszProfile halasz_minimize(const CoefficientTable& table, int64_t X, double t_bound,
                              double target_accuracy);

struct HalaszAuditRow {
    double t;
    double distance;   // D(t)
    double bound;      // (kappa_d - eps) * min(log log X, log(1 + |t-t0| log X))
    double slack;      // distance - bound; min over rows estimates the O(1)
};

struct HalaszAudit {
    std::vector<HalaszAuditRow> rows;
    double min_slack = 0.0;  // empirical -O_pi(1); reported, never graded
    double kappa_d = 0.0;
    double eps = 0.0;
};

HalaszAudit lower_bound_audit(const HalaszProfile& profile, int d, double eps);

}  // namespace lmlab
