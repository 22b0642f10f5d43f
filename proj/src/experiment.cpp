#include "lmlab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "lmlab/constants.hpp"
#include "lmlab/corpora.hpp"
#include "lmlab/dirichlet_poly.hpp"
#include "lmlab/halasz.hpp"
#include "lmlab/mean_sums.hpp"
#include "lmlab/moments.hpp"
#include "lmlab/primes.hpp"
#include "lmlab/ramare.hpp"
#include "lmlab/table_io.hpp"

namespace lmlab {

namespace {

using nlohmann::json;

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string cache_directory(const ExperimentConfig& cfg) {
    if (!cfg.cache_dir.empty()) return cfg.cache_dir;
    if (const char* env = std::getenv("LMLAB_CACHE_DIR")) return env;
    return "./cache";
}

std::string sanitize_token(std::string s) {
    for (char& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.') c = '_';
    return s;
}

std::string corpus_token(const ExperimentConfig& cfg) {
    if (cfg.corpus == "synthetic")
        return "synthetic_s" + std::to_string(cfg.seed) + "_d" + std::to_string(cfg.synth_d) +
               (cfg.self_dual ? "_sd" : "");
    if (cfg.corpus == "twist") {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "twist_%.17g", cfg.tau0);
        return sanitize_token(buf);
    }
    return sanitize_token(cfg.corpus);
}

CoefficientTable build_corpus(const ExperimentConfig& cfg, int64_t n) {
    if (cfg.corpus == "delta") return delta_table(n);
    if (cfg.corpus == "sym2delta") return sym_square_table(n);
    if (cfg.corpus == "zeta_like") return ones_table(n);
    if (cfg.corpus == "twist") return twist_table(n, cfg.tau0);
    if (cfg.corpus == "mu2toy") return mu2_toy_table(n);
    if (cfg.corpus == "synthetic") {
        auto spec = unitary_satake(cfg.seed, cfg.synth_d, n, cfg.self_dual);
        return extend_multiplicative(spec, n, CoefficientTable::Kind::standard);
    }
    throw std::invalid_argument("unknown corpus '" + cfg.corpus + "'");
}

SatakeSpec corpus_satake(const ExperimentConfig& cfg, int64_t n) {
    if (cfg.corpus == "delta") return delta_satake(n);
    if (cfg.corpus == "sym2delta") return sym2_satake(n);
    if (cfg.corpus == "zeta_like") return zeta_satake(n);
    if (cfg.corpus == "synthetic") return unitary_satake(cfg.seed, cfg.synth_d, n, cfg.self_dual);
    throw std::invalid_argument("corpus '" + cfg.corpus + "' has no Satake data");
}

// Read-through cache; transparent to the report so cached and fresh runs
// produce identical output.
CoefficientTable corpus_table(const ExperimentConfig& cfg, int64_t n) {
    if (cfg.no_cache) return build_corpus(cfg, n);
    namespace fs = std::filesystem;
    fs::path dir = cache_directory(cfg);
    std::string fname = corpus_token(cfg) + "_N" + std::to_string(n) + ".tbl";
    fs::path path = dir / fname;
    if (fs::exists(path)) {
        try {
            auto t = load_table(path.string());
            if (t.n_max == n) return t;
        } catch (const std::exception&) {
            // fall through and rebuild
        }
    }
    auto t = build_corpus(cfg, n);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!ec) {
        try {
            save_table(t, path.string());
        } catch (const std::exception&) {
            // cache write failures never poison the run
        }
    }
    return t;
}

json ledger_json(const SelectedParams& sp) {
    const char* mode = sp.mode == ParamMode::paper
                           ? "paper"
                           : (sp.mode == ParamMode::paper_beta ? "paper_beta" : "desk");
    json j{{"mode", mode}, {"X", sp.X},         {"d", sp.d},
           {"P", sp.P},    {"Q", sp.Q},         {"H", sp.H},
           {"Z", sp.Z},    {"infeasible", sp.infeasible}};
    if (sp.mode == ParamMode::paper_beta) {
        j["beta"] = sp.beta;
        j["eps"] = sp.eps;
    }
    return j;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open CSV path " + path);
    out << header << "\n";
    for (const auto& r : rows) out << r << "\n";
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

QuadratureSpec quad_of(const ExperimentConfig& cfg) {
    QuadratureSpec q;
    q.tol_rel = cfg.quad_tol;
    q.max_refinements = cfg.quad_max_ref;
    return q;
}

DecompositionParams desk_params(const ExperimentConfig& cfg) {
    DecompositionParams p;
    p.X = cfg.X;
    p.P = cfg.P;
    p.Q = cfg.Q;
    p.H = cfg.H;
    return p;
}

json run_build_coeffs(const ExperimentConfig& cfg, json& artifacts) {
    if (cfg.N < 1) throw std::invalid_argument("build-coeffs: need --N >= 1");
    auto table = corpus_table(cfg, cfg.N);
    std::string out = cfg.out_table;
    if (out.empty()) {
        namespace fs = std::filesystem;
        fs::path dir = cache_directory(cfg);
        std::error_code ec;
        fs::create_directories(dir, ec);
        out = (dir / (corpus_token(cfg) + "_N" + std::to_string(cfg.N) + ".tbl")).string();
    }
    save_table(table, out);
    artifacts["table"] = out;
    json head = json::array();
    for (int64_t n = 1; n <= std::min<int64_t>(8, table.n_max); ++n)
        head.push_back({{"n", n},
                        {"re", table.values[static_cast<size_t>(n)].real()},
                        {"im", table.values[static_cast<size_t>(n)].imag()}});
    return json{{"degree", table.degree},
                {"N", table.n_max},
                {"kind", CoefficientTable::kind_name(table.kind)},
                {"source", table.source},
                {"hash", hex64(table_header_hash(table))},
                {"head", head}};
}

json run_decompose(const ExperimentConfig& cfg, json& artifacts, bool verify,
                   std::vector<std::string>& warnings, int& status) {
    if (cfg.X < 1) throw std::invalid_argument("decompose: need --X");
    DecompositionParams params = desk_params(cfg);
    params.validate();
    int64_t n_need = static_cast<int64_t>(
        std::ceil(static_cast<double>(params.X) * std::exp(1.0 / params.H)));
    auto table = corpus_table(cfg, std::max(cfg.N, n_need));
    auto decomp = decompose(table, params);

    int64_t primes_in_window = 0;
    for (int64_t p : sieve_primes(static_cast<int64_t>(std::floor(params.Q))))
        if (static_cast<double>(p) >= params.P) ++primes_in_window;

    json per_j = json::array();
    for (size_t i = 0; i < decomp.q_pieces.size(); ++i) {
        per_j.push_back({{"j", decomp.q_pieces[i].j},
                         {"q_support", decomp.q_pieces[i].primes.size()},
                         {"f_m_max", decomp.f_pieces[i].m_max}});
    }
    json res{{"X", params.X},
             {"P", params.P},
             {"Q", params.Q},
             {"H", params.H},
             {"n_hi", decomp.n_hi},
             {"j_lo", params.j_lo()},
             {"j_hi", params.j_hi()},
             {"pieces", per_j},
             {"q_support_total", decomp.q_support_total()},
             {"window_prime_count", primes_in_window},
             {"prime_count_match", decomp.q_support_total() == primes_in_window},
             {"overcount_triples", decomp.overcounts.size()},
             {"pm_corrections", decomp.pm_corrections.size()},
             {"rough_count", decomp.rough.size()}};

    if (verify) {
        auto reas = reassemble(decomp);
        res["max_rel_dev"] = reas.max_rel_dev;
        res["argmax_n"] = reas.argmax;
        bool pass = reas.max_rel_dev < 1e-10;
        if (cfg.exact_mode) {
            Rat dev = reassemble_exact_max_dev(decomp);
            res["exact_max_dev"] = dev.str();
            pass = pass && dev == Rat(0);
        }
        res["pass"] = pass;
        if (!pass) {
            warnings.push_back("reassembly identity failed");
            status = 1;
        }
    }
    if (!cfg.out_csv.empty()) {
        std::vector<std::string> rows;
        for (size_t i = 0; i < decomp.q_pieces.size(); ++i)
            rows.push_back(std::to_string(decomp.q_pieces[i].j) + "," +
                           std::to_string(decomp.q_pieces[i].primes.size()) + "," +
                           std::to_string(decomp.f_pieces[i].m_max));
        write_csv(cfg.out_csv, "j,q_support,f_m_max", rows);
        artifacts["csv"] = cfg.out_csv;
    }
    return res;
}

json run_halasz(const ExperimentConfig& cfg, json& artifacts) {
    if (cfg.X < 2) throw std::invalid_argument("halasz: need --X >= 2");
    auto table = corpus_table(cfg, std::max(cfg.N, cfg.X));
    auto prof = halasz_minimize(table, cfg.X, cfg.t_bound, cfg.accuracy);
    auto audit = lower_bound_audit(prof, table.degree, cfg.audit_eps);
    ConstantsLedger led(table.degree);
    json res{{"rho_d", led.rho_d},
             {"eta_d", led.eta_d},
             {"X", prof.X},
             {"degree", prof.degree},
             {"t_bound", prof.t_bound},
             {"delta", prof.delta},
             {"t0", prof.t0},
             {"M", prof.m_value},
             {"grid_min", prof.grid_min},
             {"boundary_hit", prof.boundary_hit},
             {"kappa_d", audit.kappa_d},
             {"audit_eps", audit.eps},
             {"min_slack", audit.min_slack},
             {"grid_rows_stored", prof.grid_t.size()}};
    if (!cfg.out_csv.empty()) {
        std::vector<std::string> rows;
        for (const auto& r : audit.rows)
            rows.push_back(fmt(r.t) + "," + fmt(r.distance) + "," + fmt(r.bound) + "," +
                           fmt(r.slack));
        write_csv(cfg.out_csv, "t,distance,bound,slack", rows);
        artifacts["csv"] = cfg.out_csv;
    }
    return res;
}

json run_moment(const ExperimentConfig& cfg, json& artifacts,
                std::vector<std::string>& warnings) {
    if (cfg.X < 1) throw std::invalid_argument("moment: need --X");
    auto table = corpus_table(cfg, std::max(cfg.N, cfg.X));
    MomentOptions opts;
    opts.full_window = cfg.full_window;
    opts.with_excision = !cfg.no_excise;
    opts.excision_Z = cfg.Z;
    opts.census_exponent = cfg.census_exponent;
    if (cfg.P > 0.0 && cfg.Q > 0.0 && cfg.H > 0.0) {
        DecompositionParams dp = desk_params(cfg);
        int64_t n_need = static_cast<int64_t>(
            std::ceil(static_cast<double>(dp.X) * std::exp(1.0 / dp.H)));
        if (table.n_max < n_need) table = corpus_table(cfg, n_need);
        opts.census_params = dp;
    }
    auto rep = moment_experiment(table, cfg.X, cfg.T, quad_of(cfg), opts);
    for (const auto& w : rep.warnings) warnings.push_back(w);

    json res{{"source", rep.source},
             {"X", rep.X},
             {"T1", rep.T1},
             {"T2", rep.T2},
             {"I", rep.I},
             {"quad_converged", rep.quad_converged},
             {"refinements", rep.refinements},
             {"sum_sq", rep.sum_sq},
             {"eta_d", rep.eta_d},
             {"I_over_X2", rep.norm_x2},
             {"I_logeta_over_X2", rep.norm_x2_log},
             {"I_over_mvt_T", rep.norm_mvt_T},
             {"I_over_mvt_2T", rep.norm_mvt_2T},
             {"paper_ledger", ledger_json(rep.paper_ledger)}};
    if (rep.excised) {
        res["excised"] = {{"t0", rep.excised->t0},
                          {"Z", rep.excised->Z},
                          {"value", rep.excised->value},
                          {"pieces", rep.excised->pieces}};
    }
    if (rep.desk_ledger) res["desk_ledger"] = ledger_json(*rep.desk_ledger);
    if (cfg.mode == "paper_beta")
        res["paper_beta_ledger"] = ledger_json(select_parameters(
            std::max(16.0, static_cast<double>(cfg.X)), table.degree, ParamMode::paper_beta,
            cfg.beta, cfg.eps));
    if (cfg.with_weighted && cfg.T > 1.0) {
        auto poly = from_table(table, cfg.X);
        auto wm = weighted_second_moment(poly, cfg.T, cfg.weighted_alpha, quad_of(cfg));
        res["weighted"] = {{"alpha", cfg.weighted_alpha},
                           {"T", cfg.T},
                           {"value", wm.value},
                           {"quad_converged", wm.converged}};
        if (!wm.converged) warnings.push_back("weighted moment quadrature did not converge");
    }
    if (!rep.census.empty()) {
        json census = json::array();
        for (const auto& c : rep.census)
            census.push_back({{"j", c.j},
                              {"threshold", c.threshold},
                              {"exponent", c.exponent},
                              {"n_small", c.n_small},
                              {"n_large", c.n_large}});
        res["census"] = census;
        if (!cfg.out_csv.empty()) {
            std::vector<std::string> rows;
            for (const auto& c : rep.census)
                rows.push_back(std::to_string(c.j) + "," + fmt(c.threshold) + "," +
                               std::to_string(c.n_small) + "," + std::to_string(c.n_large));
            write_csv(cfg.out_csv, "j,threshold,n_small,n_large", rows);
            artifacts["csv"] = cfg.out_csv;
        }
    }
    return res;
}

json run_trend(const ExperimentConfig& cfg, json& artifacts,
               std::vector<std::string>& warnings) {
    if (cfg.x_list.empty()) throw std::invalid_argument("trend: need --X-list");
    int64_t n_top = *std::max_element(cfg.x_list.begin(), cfg.x_list.end());
    auto table = corpus_table(cfg, std::max(cfg.N, n_top));
    TrendTRule rule;
    if (cfg.T > 0.0 && cfg.mode == "fixed") {
        rule.fixed = true;
        rule.fixed_T = cfg.T;
    }
    auto scan = trend_scan(table, cfg.x_list, rule, quad_of(cfg));
    json rows = json::array();
    for (const auto& r : scan.rows) {
        if (!r.quad_converged) warnings.push_back("quadrature not converged at X=" +
                                                  std::to_string(r.X));
        rows.push_back({{"X", r.X},
                        {"T", r.T},
                        {"I", r.I},
                        {"I_over_X2", r.norm_x2},
                        {"I_logeta_over_X2", r.norm_x2_log},
                        {"I_over_mvt_T", r.norm_mvt_T},
                        {"I_over_mvt_2T", r.norm_mvt_2T},
                        {"quad_converged", r.quad_converged}});
    }
    if (!cfg.out_csv.empty()) {
        std::vector<std::string> lines;
        for (const auto& r : scan.rows)
            lines.push_back(std::to_string(r.X) + "," + fmt(r.T) + "," + fmt(r.I) + "," +
                            fmt(r.norm_x2) + "," + fmt(r.norm_x2_log) + "," +
                            fmt(r.norm_mvt_T) + "," + fmt(r.norm_mvt_2T));
        write_csv(cfg.out_csv, "X,T,I,I_over_X2,I_logeta_over_X2,I_over_mvt_T,I_over_mvt_2T",
                  lines);
        artifacts["csv"] = cfg.out_csv;
    }
    return json{{"rows", rows},
                {"eta_d", scan.eta_d},
                {"has_verdict", scan.has_verdict},
                {"I_over_X2_nonincreasing", scan.ratio_x2_nonincreasing}};
}

json run_mean_sum(const ExperimentConfig& cfg, json& artifacts) {
    if (cfg.x_list.empty()) throw std::invalid_argument("mean-sum: need --X-list");
    int64_t n_top = *std::max_element(cfg.x_list.begin(), cfg.x_list.end());
    auto table = corpus_table(cfg, std::max(cfg.N, n_top));

    json sums = json::array();
    for (int64_t x : cfg.x_list) {
        cplx s = boxplus_partial_sum(table, x);
        sums.push_back({{"X", x}, {"re", s.real()}, {"im", s.imag()}});
    }
    auto fit = main_term_fit(table, cfg.x_list);
    auto scan = error_exponent_scan(table, cfg.x_list);
    ConstantsLedger ledger(table.degree);
    double y_top = choose_Y(static_cast<double>(n_top), table.degree, ledger.eta_d);

    json rows = json::array();
    for (const auto& r : scan.rows)
        rows.push_back({{"X", r.X},
                        {"residual", r.residual},
                        {"envelope", r.envelope},
                        {"ratio", r.ratio}});
    json res{{"partial_sums", sums},
             {"c_fit_re", fit.c_fit.real()},
             {"c_fit_im", fit.c_fit.imag()},
             {"c_smoothed_re", fit.c_smoothed.real()},
             {"c_smoothed_im", fit.c_smoothed.imag()},
             {"gap", fit.gap},
             {"fit_rms", fit.fit_rms},
             {"residual_rows", rows},
             {"fitted_exponent", scan.fitted_exponent},
             {"choose_Y_at_top", y_top},
             {"eta_d", ledger.eta_d},
             {"note", "envelope shape check only; the theorem regime needs d >= 5"}};

    if (cfg.window_X > 0.0 && cfg.window_Y > 0.0) {
        auto w = smooth_window(cfg.window_X, cfg.window_Y);
        double max_slope = 0.0;
        for (int i = 0; i <= 10000; ++i) {
            double u = cfg.window_X + cfg.window_Y * static_cast<double>(i) / 10000.0;
            max_slope = std::max(max_slope,
                                 std::abs(w.derivative_estimate(u, cfg.window_Y * 1e-5)));
        }
        auto m1 = mellin(w, cplx(1.0, 0.0), quad_of(cfg));
        auto m2 = mellin(w, cplx(2.0, 0.0), quad_of(cfg));
        std::vector<double> ts;
        for (int i = 0; i < 12; ++i)
            ts.push_back(2.0 * cfg.window_X / cfg.window_Y *
                         std::pow(10.0, static_cast<double>(i) / 11.0));
        auto decay = window_decay_audit(w, 1, ts, quad_of(cfg));
        json decay_rows = json::array();
        for (const auto& r : decay.rows)
            decay_rows.push_back({{"t", r.t}, {"modulus", r.modulus}, {"bound_1", r.bound_j}});
        res["window"] = {{"X", cfg.window_X},
                         {"Y", cfg.window_Y},
                         {"W_at_X", w(cfg.window_X)},
                         {"W_mid", w(cfg.window_X + cfg.window_Y / 2.0)},
                         {"W_at_XY", w(cfg.window_X + cfg.window_Y)},
                         {"max_slope_times_Y", max_slope * cfg.window_Y},
                         {"mellin_1_re", m1.value.real()},
                         {"mellin_2_re", m2.value.real()},
                         {"decay_rows", decay_rows},
                         {"decay_fitted_exponent", decay.fitted_exponent}};
    }

    if (!cfg.out_csv.empty()) {
        std::vector<std::string> lines;
        for (const auto& r : scan.rows)
            lines.push_back(std::to_string(r.X) + "," + fmt(r.residual) + "," +
                            fmt(r.envelope) + "," + fmt(r.ratio));
        write_csv(cfg.out_csv, "X,residual,envelope,ratio", lines);
        artifacts["csv"] = cfg.out_csv;
    }
    return res;
}

json run_audit(const ExperimentConfig& cfg, json& artifacts) {
    if (cfg.N < 1) throw std::invalid_argument("audit: need --N");
    auto table = corpus_table(cfg, cfg.N);
    json res;
    if (cfg.scan_kind.empty() || cfg.scan_kind == "grc") {
        auto spec = corpus_satake(cfg, cfg.N);
        auto rs = extend_multiplicative(spec, cfg.N, CoefficientTable::Kind::rankin_selberg);
        auto rep = grc_audit(table, rs);
        res["grc"] = {{"n_checked", rep.n_checked},
                      {"max_ratio_tau", rep.max_ratio_tau},
                      {"argmax_tau", rep.argmax_tau},
                      {"max_ratio_rs", rep.max_ratio_rs},
                      {"argmax_rs", rep.argmax_rs},
                      {"violations_tau", rep.violations_tau},
                      {"violations_rs", rep.violations_rs},
                      {"rs_max_imag", rep.rs_max_imag},
                      {"rs_min_real", rep.rs_min_real},
                      {"pass", rep.pass()}};
    }
    if (cfg.scan_kind == "twisted_prime") {
        if (!(cfg.scan_P >= 2.0 && cfg.scan_Q >= cfg.scan_P))
            throw std::invalid_argument("audit: twisted_prime needs --P and --Q");
        std::vector<double> ts = cfg.t_list.empty() ? std::vector<double>{0.0, 10.0} : cfg.t_list;
        double ref = cfg.scan_Q / std::log(cfg.scan_Q);
        json jrows = json::array();
        std::vector<std::string> lines;
        for (double t : ts) {
            cplx s = twisted_prime_sum(table, cfg.scan_P, cfg.scan_Q, t);
            jrows.push_back({{"t", t},
                             {"sum_re", s.real()},
                             {"sum_im", s.imag()},
                             {"modulus", std::abs(s)},
                             {"Q_over_logQ", ref},
                             {"ratio", std::abs(s) / ref}});
            lines.push_back(fmt(t) + "," + fmt(std::abs(s)) + "," + fmt(ref) + "," +
                            fmt(std::abs(s) / ref));
        }
        res["twisted_prime"] = {{"P", cfg.scan_P}, {"Q", cfg.scan_Q}, {"rows", jrows}};
        if (!cfg.out_csv.empty()) {
            write_csv(cfg.out_csv, "t,modulus,Q_over_logQ,ratio", lines);
            artifacts["csv"] = cfg.out_csv;
        }
        return res;
    }
    if (!cfg.scan_kind.empty() && cfg.scan_kind != "grc") {
        ScanKind kind;
        if (cfg.scan_kind == "prime_square") kind = ScanKind::prime_square;
        else if (cfg.scan_kind == "short_interval") kind = ScanKind::short_interval;
        else if (cfg.scan_kind == "boxplus_short") kind = ScanKind::boxplus_short;
        else if (cfg.scan_kind == "rough_sieve") kind = ScanKind::rough_sieve;
        else if (cfg.scan_kind == "rs_average") kind = ScanKind::rs_average;
        else throw std::invalid_argument("audit: unknown scan kind '" + cfg.scan_kind + "'");

        ScanParams sp;
        sp.x_grid = cfg.x_list.empty() ? std::vector<int64_t>{cfg.N} : cfg.x_list;
        sp.Y = cfg.scan_Y;
        sp.P = cfg.scan_P;
        sp.Q = cfg.scan_Q;
        const CoefficientTable* scan_table = &table;
        CoefficientTable derived;
        if (kind == ScanKind::boxplus_short) {
            derived = boxplus_coeffs(table, cfg.N);
            scan_table = &derived;
        } else if (kind == ScanKind::rs_average) {
            auto spec = corpus_satake(cfg, cfg.N);
            derived = extend_multiplicative(spec, cfg.N, CoefficientTable::Kind::rankin_selberg);
            scan_table = &derived;
        }
        auto rows = diagnostic_scan(*scan_table, kind, sp);
        json jrows = json::array();
        for (const auto& r : rows)
            jrows.push_back({{"X", r.X},
                             {"observed", r.observed},
                             {"reference", r.reference},
                             {"ratio", r.ratio}});
        res["scan"] = {{"kind", scan_kind_name(kind)}, {"rows", jrows}};
        if (!cfg.out_csv.empty()) {
            std::vector<std::string> lines;
            for (const auto& r : rows)
                lines.push_back(fmt(r.X) + "," + fmt(r.observed) + "," + fmt(r.reference) +
                                "," + fmt(r.ratio));
            write_csv(cfg.out_csv, "X,observed,reference,ratio", lines);
            artifacts["csv"] = cfg.out_csv;
        }
    }
    return res;
}

json config_json(const ExperimentConfig& c) {
    json j{{"subcommand", c.subcommand},
           {"corpus", c.corpus},
           {"N", c.N},
           {"X", c.X},
           {"T", c.T},
           {"mode", c.mode},
           {"quad_tol", c.quad_tol},
           {"quad_max_ref", c.quad_max_ref}};
    if (c.corpus == "synthetic") {
        j["seed"] = c.seed;
        j["d"] = c.synth_d;
        j["self_dual"] = c.self_dual;
    }
    if (c.corpus == "twist") j["tau0"] = c.tau0;
    if (c.P > 0.0) { j["P"] = c.P; j["Q"] = c.Q; j["H"] = c.H; }
    if (c.Z > 0.0) j["Z"] = c.Z;
    if (!c.x_list.empty()) j["X_list"] = c.x_list;
    if (c.subcommand == "halasz") {
        j["t_bound"] = c.t_bound;
        j["accuracy"] = c.accuracy;
        j["audit_eps"] = c.audit_eps;
    }
    if (!c.scan_kind.empty()) {
        j["scan"] = c.scan_kind;
        if (c.scan_Y > 0.0) j["scan_Y"] = c.scan_Y;
        if (c.scan_P > 0.0) { j["scan_P"] = c.scan_P; j["scan_Q"] = c.scan_Q; }
    }
    if (c.window_X > 0.0) { j["window_X"] = c.window_X; j["window_Y"] = c.window_Y; }
    return j;
}

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
    RunResult rr;
    json artifacts = json::object();
    std::vector<std::string> warnings;

    json results;
    if (cfg.subcommand == "build-coeffs") {
        results = run_build_coeffs(cfg, artifacts);
    } else if (cfg.subcommand == "decompose") {
        results = run_decompose(cfg, artifacts, false, warnings, rr.status);
    } else if (cfg.subcommand == "verify-identity") {
        results = run_decompose(cfg, artifacts, true, warnings, rr.status);
    } else if (cfg.subcommand == "halasz") {
        results = run_halasz(cfg, artifacts);
    } else if (cfg.subcommand == "moment") {
        results = run_moment(cfg, artifacts, warnings);
    } else if (cfg.subcommand == "trend") {
        results = run_trend(cfg, artifacts, warnings);
    } else if (cfg.subcommand == "mean-sum") {
        results = run_mean_sum(cfg, artifacts);
    } else if (cfg.subcommand == "audit") {
        results = run_audit(cfg, artifacts);
    } else {
        throw std::invalid_argument("unknown subcommand '" + cfg.subcommand + "'");
    }

    rr.report = json{{"schema_version", 1},
                     {"timestamp", iso_timestamp()},
                     {"subcommand", cfg.subcommand},
                     {"config", config_json(cfg)},
                     {"warnings", warnings},
                     {"results", results},
                     {"artifacts", artifacts}};

    if (!cfg.out_json.empty()) {
        std::ofstream out(cfg.out_json);
        if (!out) throw std::runtime_error("cannot open report path " + cfg.out_json);
        out << rr.report.dump(2) << "\n";
    }
    return rr;
}

}  // namespace lmlab
