// lmlab: desk-scale experiments on Dirichlet coefficients of L-functions,
// Ramare-identity decompositions, pretentious distances, and second-moment
// integrals. Every subcommand emits a JSON report (stdout or --out) and,
// where it makes sense, CSV rows (--csv).

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lmlab/experiment.hpp"

namespace {

void add_corpus_flags(CLI::App* cmd, lmlab::ExperimentConfig& cfg) {
    cmd->add_option("--corpus", cfg.corpus,
                    "delta | sym2delta | zeta_like | synthetic | twist | mu2toy")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "synthetic corpus seed")->capture_default_str();
    cmd->add_option("--d", cfg.synth_d, "synthetic corpus degree")->capture_default_str();
    cmd->add_flag("--self-dual", cfg.self_dual, "synthetic corpus: conjugate-closed parameters");
    cmd->add_option("--tau0", cfg.tau0, "twist corpus exponent")->capture_default_str();
    cmd->add_option("--N", cfg.N, "table length (derived from the operation when omitted)");
    cmd->add_option("--cache-dir", cfg.cache_dir, "table cache directory (default $LMLAB_CACHE_DIR or ./cache)");
    cmd->add_flag("--no-cache", cfg.no_cache, "always rebuild tables");
    cmd->add_option("--out", cfg.out_json, "write the JSON report here");
    cmd->add_option("--csv", cfg.out_csv, "write CSV rows here");
}

void add_quad_flags(CLI::App* cmd, lmlab::ExperimentConfig& cfg) {
    cmd->add_option("--quad-tol", cfg.quad_tol, "quadrature relative tolerance")
        ->capture_default_str();
    cmd->add_option("--quad-max-ref", cfg.quad_max_ref, "maximum step halvings")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for second moments of L-function coefficient sums"};
    app.require_subcommand(1);

    lmlab::ExperimentConfig cfg;

    auto* build = app.add_subcommand("build-coeffs", "build a coefficient table and cache it");
    add_corpus_flags(build, cfg);
    build->add_option("--table-out", cfg.out_table, "explicit table path");

    auto* dec = app.add_subcommand("decompose", "Ramare decomposition bookkeeping");
    add_corpus_flags(dec, cfg);
    dec->add_option("--X", cfg.X, "polynomial length")->required();
    dec->add_option("--P", cfg.P, "prime window start")->required();
    dec->add_option("--Q", cfg.Q, "prime window end")->required();
    dec->add_option("--H", cfg.H, "dyadic resolution")->required();

    auto* ver = app.add_subcommand("verify-identity",
                                   "decompose, reassemble, and check the exact identity");
    add_corpus_flags(ver, cfg);
    ver->add_option("--X", cfg.X)->required();
    ver->add_option("--P", cfg.P)->required();
    ver->add_option("--Q", cfg.Q)->required();
    ver->add_option("--H", cfg.H)->required();
    ver->add_flag("--exact", cfg.exact_mode, "also run the exact rational path (integer tables)");

    auto* hal = app.add_subcommand("halasz", "pretentious distance: minimizer and audit");
    add_corpus_flags(hal, cfg);
    hal->add_option("--X", cfg.X)->required();
    hal->add_option("--t-bound", cfg.t_bound, "search box (default min(X, 1e3))");
    hal->add_option("--accuracy", cfg.accuracy, "target accuracy of t0")->capture_default_str();
    hal->add_option("--audit-eps", cfg.audit_eps, "epsilon in the lower-bound audit")
        ->capture_default_str();

    auto* mom = app.add_subcommand("moment", "second-moment experiment over [T, 2T]");
    add_corpus_flags(mom, cfg);
    add_quad_flags(mom, cfg);
    mom->add_option("--X", cfg.X)->required();
    mom->add_option("--T", cfg.T)->capture_default_str();
    mom->add_flag("--full-window", cfg.full_window, "integrate [2, T] instead of [T, 2T]");
    mom->add_flag("--no-excise", cfg.no_excise, "skip the B_Z(t0) excision");
    mom->add_option("--Z", cfg.Z, "excision half-width (default log X)");
    mom->add_option("--P", cfg.P, "census window start (enables the T_S/T_L census)");
    mom->add_option("--Q", cfg.Q, "census window end");
    mom->add_option("--H", cfg.H, "census dyadic resolution");
    mom->add_option("--census-exponent", cfg.census_exponent,
                    "threshold exponent (paper value 100, desk default 1)")
        ->capture_default_str();
    mom->add_option("--alpha", cfg.weighted_alpha,
                    "also report the weighted moment int_1^T t^{-alpha} |P|^2 dt");
    mom->add_option("--mode", cfg.mode, "parameter-ledger mode: desk | paper_beta")
        ->capture_default_str();
    mom->add_option("--beta", cfg.beta, "zero-free exponent for paper_beta")
        ->capture_default_str();
    mom->add_option("--eps", cfg.eps, "epsilon for paper_beta")->capture_default_str();

    auto* trend = app.add_subcommand("trend", "normalized moment ratios along an X grid");
    add_corpus_flags(trend, cfg);
    add_quad_flags(trend, cfg);
    trend->add_option("--X-list", cfg.x_list, "X grid")->required()->delimiter(',');
    trend->add_option("--T", cfg.T, "fixed T (with --mode fixed)")->capture_default_str();
    trend->add_option("--mode", cfg.mode, "power (T = max(16, X^{2/d})) or fixed")
        ->capture_default_str();

    auto* mean = app.add_subcommand("mean-sum", "partial sums of 1-boxplus coefficients");
    add_corpus_flags(mean, cfg);
    add_quad_flags(mean, cfg);
    mean->add_option("--X-list", cfg.x_list, "X grid")->required()->delimiter(',');
    mean->add_option("--window-X", cfg.window_X, "also audit a smooth window at this X");
    mean->add_option("--window-Y", cfg.window_Y, "window transition length");

    auto* audit = app.add_subcommand("audit", "GRC chain audit and diagnostic scans");
    add_corpus_flags(audit, cfg);
    audit->add_option("--scan", cfg.scan_kind,
                      "grc | prime_square | short_interval | boxplus_short | rough_sieve | "
                      "rs_average | twisted_prime");
    audit->add_option("--X-list", cfg.x_list, "scan X grid")->delimiter(',');
    audit->add_option("--Y", cfg.scan_Y, "short-interval length");
    audit->add_option("--P", cfg.scan_P, "prime window start (rough_sieve, twisted_prime)");
    audit->add_option("--Q", cfg.scan_Q, "prime window end");
    audit->add_option("--t-list", cfg.t_list, "twisted_prime evaluation points")->delimiter(',');

    CLI11_PARSE(app, argc, argv);
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (mom->count("--alpha") > 0) cfg.with_weighted = true;

    try {
        auto rr = lmlab::run(cfg);
        if (cfg.out_json.empty()) std::cout << rr.report.dump(2) << "\n";
        return rr.status;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
