#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vendor_json.hpp"

namespace lmlab {

// One experiment invocation: corpus selector, operation selector, parameters,
// output paths. run() is pure given the config (timestamp aside).
struct ExperimentConfig {
    std::string subcommand;  // build-coeffs|decompose|verify-identity|halasz|
                             // moment|trend|mean-sum|audit

    // corpus
    std::string corpus = "delta";  // delta|sym2delta|zeta_like|synthetic|twist|mu2toy
    uint64_t seed = 7;             // synthetic
    int synth_d = 3;
    bool self_dual = false;
    double tau0 = 5.0;             // twist

    // shared numeric knobs
    int64_t N = 0;  // table length; 0 derives it from the operation
    int64_t X = 0;
    double T = 64.0;
    double P = 0.0, Q = 0.0, H = 0.0, Z = 0.0;
    std::string mode = "desk";  // desk|paper|paper_beta (parameter ledger)
    double beta = 2.0 / 3.0;
    double eps = 0.05;
    std::vector<int64_t> x_list;

    // halasz
    double t_bound = 0.0;
    double accuracy = 1e-3;
    double audit_eps = 1e-4;

    // quadrature
    double quad_tol = 1e-3;
    int quad_max_ref = 6;

    // moment extras
    bool full_window = false;
    bool no_excise = false;
    double census_exponent = 1.0;
    double weighted_alpha = 0.0;  // != 0 adds the weighted moment over [1, T]
    bool with_weighted = false;

    // audit scans
    std::string scan_kind;  // empty = GRC audit only
    double scan_Y = 0.0;
    double scan_P = 0.0, scan_Q = 0.0;
    std::vector<double> t_list;  // twisted_prime scan points

    // mean-sum window audit
    double window_X = 0.0, window_Y = 0.0;

    // io
    std::string out_json;  // empty = stdout only
    std::string out_csv;
    std::string out_table;  // build-coeffs
    std::string cache_dir;  // empty = $LMLAB_CACHE_DIR or ./cache
    bool no_cache = false;
    bool exact_mode = false;  // verify-identity rational path (integer tables)
};

struct RunResult {
    int status = 0;
    nlohmann::json report;
};

// Executes the configured pipeline, writes artifacts, returns the report.
// Invalid configs throw std::invalid_argument (the CLI turns that into a
// nonzero status with a one-line error); experiment warnings end up in the
// report and never affect the status.
RunResult run(const ExperimentConfig& config);

}  // namespace lmlab
