#include "lmlab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lmlab {

namespace {

double table_sq_sum(const CoefficientTable& table, int64_t X) {
    std::vector<double> sq(static_cast<size_t>(X));
    for (int64_t n = 1; n <= X; ++n)
        sq[static_cast<size_t>(n - 1)] = std::norm(table.values[static_cast<size_t>(n)]);
    return pairwise_sum(sq);
}

ExcisedInfo excised_over(const DirichletPolynomial& poly, double lo, double hi, double Z,
                         double t0, const QuadratureSpec& quad) {
    if (!(Z > 0.0)) throw std::invalid_argument("excised_moment: need Z > 0");
    ExcisedInfo info;
    info.t0 = t0;
    info.Z = Z;
    double b_lo = t0 - Z, b_hi = t0 + Z;
    auto add_piece = [&](double a, double b) {
        if (b - a <= 1e-12 * std::max(1.0, std::abs(b))) return;
        info.value += second_moment(poly, a, b, quad).value;
        ++info.pieces;
    };
    if (b_hi <= lo || b_lo >= hi) {
        add_piece(lo, hi);  // disjoint: full integral
    } else {
        if (b_lo > lo) add_piece(lo, b_lo);
        if (b_hi < hi) add_piece(b_hi, hi);
    }
    return info;
}

}  // namespace

ExcisedInfo excised_moment(const CoefficientTable& table, int64_t X, double T, double Z,
                           double t0, const QuadratureSpec& quad) {
    auto poly = from_table(table, X);
    return excised_over(poly, T, 2.0 * T, Z, t0, quad);
}

CensusRow large_value_census(const RamareDecomposition& decomp,
                             const std::vector<double>& t_grid, int j, double exponent) {
    int j_lo = decomp.params.j_lo(), j_hi = decomp.params.j_hi();
    if (j < j_lo || j > j_hi)
        throw std::invalid_argument("large_value_census: j outside decomposition range");
    const auto& qp = decomp.q_pieces[static_cast<size_t>(j - j_lo)];

    CensusRow row;
    row.j = j;
    row.exponent = exponent;
    double logX = std::log(static_cast<double>(decomp.params.X));
    row.threshold = std::exp(static_cast<double>(j + 1) / decomp.params.H) *
                    std::pow(logX, -exponent);
    for (double t : t_grid) {
        cplx s(0.0, 0.0);
        for (size_t i = 0; i < qp.primes.size(); ++i)
            s += qp.f_p[i] * std::polar(1.0, -t * std::log(static_cast<double>(qp.primes[i])));
        if (std::abs(s) > row.threshold)
            ++row.n_large;
        else
            ++row.n_small;
    }
    return row;
}

MomentReport moment_experiment(const CoefficientTable& table, int64_t X, double T,
                               const QuadratureSpec& quad, const MomentOptions& opts) {
    if (X < 1 || X > table.n_max)
        throw std::invalid_argument("moment_experiment: X outside table");
    if (!(T >= 4.0)) throw std::invalid_argument("moment_experiment: need T >= 4");

    MomentReport rep;
    rep.source = table.source;
    rep.X = X;
    if (opts.full_window) {
        rep.T1 = 2.0;
        rep.T2 = T;
    } else {
        rep.T1 = T;
        rep.T2 = 2.0 * T;
    }
    rep.quad_tol = quad.tol_rel;

    auto poly = from_table(table, X);
    auto m = second_moment(poly, rep.T1, rep.T2, quad);
    rep.I = m.value;
    rep.quad_converged = m.converged;
    rep.refinements = m.refinements;
    if (!m.converged)
        rep.warnings.push_back("quadrature did not converge after " +
                               std::to_string(m.refinements) + " refinements");

    rep.sum_sq = table_sq_sum(table, X);
    double Xd = static_cast<double>(X);
    rep.eta_d = 1.0 / (400.0 * std::pow(static_cast<double>(table.degree), 4.0));
    rep.norm_x2 = rep.I / (Xd * Xd);
    rep.norm_x2_log = rep.I * std::pow(std::log(Xd), rep.eta_d) / (Xd * Xd);
    rep.norm_mvt_T = rep.I / ((T + Xd) * rep.sum_sq);
    rep.norm_mvt_2T = rep.I / ((2.0 * T + Xd) * rep.sum_sq);

    rep.paper_ledger = select_parameters(std::max(16.0, Xd), table.degree, ParamMode::paper);
    if (rep.paper_ledger.infeasible)
        rep.warnings.push_back("paper-mode parameters infeasible (P >= Q) at this X");

    if (opts.with_excision) {
        double Z = opts.excision_Z > 0.0 ? opts.excision_Z : std::log(Xd);
        auto prof = halasz_minimize(table, X, opts.halasz_t_bound, opts.halasz_accuracy);
        rep.excised = excised_over(poly, rep.T1, rep.T2, Z, prof.t0, quad);
    }

    if (opts.census_params) {
        auto decomp = decompose(table, *opts.census_params);
        std::vector<double> grid(static_cast<size_t>(std::max(2, opts.census_grid_points)));
        for (size_t i = 0; i < grid.size(); ++i)
            grid[i] = rep.T1 + (rep.T2 - rep.T1) * static_cast<double>(i) /
                                  static_cast<double>(grid.size() - 1);
        rep.desk_ledger = select_parameters(std::max(16.0, Xd), table.degree, ParamMode::desk,
                                            0.0, 0.0, *opts.census_params);
        for (int j = decomp.params.j_lo(); j <= decomp.params.j_hi(); ++j)
            rep.census.push_back(large_value_census(decomp, grid, j, opts.census_exponent));
    }
    return rep;
}

double TrendTRule::apply(int64_t X, int d) const {
    if (fixed) return fixed_T;
    return std::max(16.0, std::pow(static_cast<double>(X), 2.0 / static_cast<double>(d)));
}

TrendScan trend_scan(const CoefficientTable& table, const std::vector<int64_t>& x_list,
                     const TrendTRule& t_rule, const QuadratureSpec& quad) {
    TrendScan scan;
    scan.eta_d = 1.0 / (400.0 * std::pow(static_cast<double>(table.degree), 4.0));
    for (int64_t X : x_list) {
        if (X > table.n_max) throw std::invalid_argument("trend_scan: X exceeds table length");
        double T = t_rule.apply(X, table.degree);
        auto poly = from_table(table, X);
        auto m = second_moment(poly, T, 2.0 * T, quad);
        double Xd = static_cast<double>(X);
        double sq = table_sq_sum(table, X);
        TrendRow row;
        row.X = X;
        row.T = T;
        row.I = m.value;
        row.quad_converged = m.converged;
        row.norm_x2 = m.value / (Xd * Xd);
        row.norm_x2_log = m.value * std::pow(std::log(Xd), scan.eta_d) / (Xd * Xd);
        row.norm_mvt_T = m.value / ((T + Xd) * sq);
        row.norm_mvt_2T = m.value / ((2.0 * T + Xd) * sq);
        scan.rows.push_back(row);
    }
    if (scan.rows.size() >= 2) {
        scan.has_verdict = true;
        scan.ratio_x2_nonincreasing = true;
        for (size_t i = 1; i < scan.rows.size(); ++i)
            if (scan.rows[i].norm_x2 > scan.rows[i - 1].norm_x2)
                scan.ratio_x2_nonincreasing = false;
    }
    return scan;
}

}  // namespace lmlab
