#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lmlab/coeff_table.hpp"
#include "lmlab/dirichlet_poly.hpp"
#include "lmlab/halasz.hpp"
#include "lmlab/ramare.hpp"

namespace lmlab {

struct CensusRow {
    int j = 0;
    double threshold = 0.0;  // e^{(j+1)/H} (log X)^{-exponent}
    double exponent = 0.0;
    int64_t n_small = 0;     // |Q_{j,H}(it)| <= threshold
    int64_t n_large = 0;
};

struct ExcisedInfo {
    double t0 = 0.0;
    double Z = 0.0;
    double value = 0.0;
    int pieces = 0;  // 0, 1 or 2 subintervals survived the excision
};

struct MomentReport {
    std::string source;
    int64_t X = 0;
    double T1 = 0.0, T2 = 0.0;
    double I = 0.0;             // raw integral over [T1, T2]
    bool quad_converged = false;
    int refinements = 0;
    double quad_tol = 0.0;
    double sum_sq = 0.0;        // sum_{n<=X} |lambda(n)|^2
    double norm_x2 = 0.0;       // I / X^2
    double norm_x2_log = 0.0;   // I log^{eta_d} X / X^2
    double norm_mvt_T = 0.0;    // I / ((T+X) sum_sq)
    double norm_mvt_2T = 0.0;   // I / ((2T+X) sum_sq)
    double eta_d = 0.0;
    std::optional<ExcisedInfo> excised;
    std::vector<CensusRow> census;
    SelectedParams paper_ledger;           // always carried, incl. infeasibility
    std::optional<SelectedParams> desk_ledger;
    std::vector<std::string> warnings;
};

struct MomentOptions {
    bool full_window = false;        // integrate [2, T] instead of [T, 2T]
    bool with_excision = true;
    double excision_Z = 0.0;         // <= 0 means the paper value log X
    double halasz_accuracy = 1e-2;   // accuracy of the embedded t0 search
    double halasz_t_bound = 0.0;     // <= 0 means desk default
    std::optional<DecompositionParams> census_params;
    double census_exponent = 1.0;    // desk default; the paper uses 100
    int census_grid_points = 257;
};

MomentReport moment_experiment(const CoefficientTable& table, int64_t X, double T,
                               const QuadratureSpec& quad, const MomentOptions& opts = {});

// Integral over [T, 2T] \ [t0-Z, t0+Z] (zero, one or two subintervals).
ExcisedInfo excised_moment(const CoefficientTable& table, int64_t X, double T, double Z,
                           double t0, const QuadratureSpec& quad);

// T_S / T_L split of the grid by |Q_{j,H}(it)| against the threshold.
CensusRow large_value_census(const RamareDecomposition& decomp,
                             const std::vector<double>& t_grid, int j, double exponent);

struct TrendRow {
    int64_t X = 0;
    double T = 0.0;
    double I = 0.0;
    double norm_x2 = 0.0;
    double norm_x2_log = 0.0;
    double norm_mvt_T = 0.0;
    double norm_mvt_2T = 0.0;
    bool quad_converged = false;
};

struct TrendScan {
    std::vector<TrendRow> rows;
    bool ratio_x2_nonincreasing = false;  // I/X^2 along the grid
    bool has_verdict = false;             // needs at least two rows
    double eta_d = 0.0;
};

struct TrendTRule {
    bool fixed = false;
    double fixed_T = 32.0;  // fixed mode
    // default: T = max(16, X^{2/d})
    double apply(int64_t X, int d) const;
};

TrendScan trend_scan(const CoefficientTable& table, const std::vector<int64_t>& x_list,
                     const TrendTRule& t_rule, const QuadratureSpec& quad);

}  // namespace lmlab
