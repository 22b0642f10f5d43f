#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lmlab/corpora.hpp"
#include "lmlab/experiment.hpp"
#include "lmlab/table_io.hpp"

using namespace lmlab;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    auto p = fs::temp_directory_path() / "lmlab_test_io";
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json masked(nlohmann::json j) {
    j["timestamp"] = "MASKED";
    return j;
}

ExperimentConfig base_config(const std::string& sub) {
    ExperimentConfig cfg;
    cfg.subcommand = sub;
    cfg.no_cache = true;
    return cfg;
}

}  // namespace

TEST_SUITE("io_cli") {

TEST_CASE("table cache round trip is exact and byte-stable") {
    auto dir = temp_dir();
    auto table = delta_table(500);
    auto path = dir / "delta500.tbl";
    save_table(table, path.string());

    auto loaded = load_table(path.string());
    CHECK(loaded.degree == table.degree);
    CHECK(loaded.n_max == table.n_max);
    CHECK(loaded.kind == table.kind);
    CHECK(loaded.source == table.source);
    for (int64_t n = 1; n <= 500; ++n)
        CHECK(loaded.at(n) == table.at(n));  // bit-exact at 17 significant digits

    auto path2 = dir / "delta500b.tbl";
    save_table(loaded, path2.string());
    CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("table cache rejects corruption") {
    auto dir = temp_dir();
    auto table = ones_table(50);
    auto path = dir / "ones50.tbl";
    save_table(table, path.string());

    // corrupted row: break the row index on data row 10
    {
        auto text = slurp(path);
        size_t pos = text.find("\n10 ");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 4, "\nxx ");
        std::ofstream out(path);
        out << text;
    }
    try {
        load_table(path.string());
        FAIL("expected corrupted-row rejection");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("row 10") != std::string::npos);
    }

    // header edited: degree changed -> hash mismatch
    save_table(table, path.string());
    {
        auto text = slurp(path);
        size_t pos = text.find("degree 1");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 8, "degree 7");
        std::ofstream out(path);
        out << text;
    }
    CHECK_THROWS_WITH_AS(load_table(path.string()),
                         doctest::Contains("hash mismatch"), std::runtime_error);

    // version mismatch
    {
        std::ofstream out(path);
        out << "lmlab-table v9\n";
    }
    CHECK_THROWS_WITH_AS(load_table(path.string()),
                         doctest::Contains("version mismatch"), std::runtime_error);

    // truncated file
    save_table(table, path.string());
    {
        auto text = slurp(path);
        std::ofstream out(path);
        out << text.substr(0, text.size() / 2);
    }
    CHECK_THROWS_AS(load_table(path.string()), std::runtime_error);
}

TEST_CASE("run: moment subcommand is deterministic modulo timestamp") {
    auto cfg = base_config("moment");
    cfg.corpus = "delta";
    cfg.X = 128;
    cfg.T = 32.0;
    cfg.no_excise = true;
    auto a = lmlab::run(cfg);
    auto b = lmlab::run(cfg);
    CHECK(a.status == 0);
    CHECK(masked(a.report) == masked(b.report));
    CHECK(a.report["results"]["I"].get<double>() >= 0.0);
    CHECK(a.report["results"]["paper_ledger"]["infeasible"].get<bool>());
    CHECK(a.report.contains("timestamp"));
    CHECK(a.report["schema_version"] == 1);
}

TEST_CASE("run: verify-identity on delta") {
    auto cfg = base_config("verify-identity");
    cfg.corpus = "delta";
    cfg.X = 1000;
    cfg.P = 5;
    cfg.Q = 31;
    cfg.H = 3;
    auto rr = lmlab::run(cfg);
    CHECK(rr.status == 0);
    CHECK(rr.report["results"]["pass"].get<bool>());
    CHECK(rr.report["results"]["max_rel_dev"].get<double>() < 1e-10);
    CHECK(rr.report["results"]["prime_count_match"].get<bool>());
}

TEST_CASE("run: verify-identity exact mode on the ones corpus") {
    auto cfg = base_config("verify-identity");
    cfg.corpus = "zeta_like";
    cfg.X = 30;
    cfg.P = 2;
    cfg.Q = 5;
    cfg.H = 2;
    cfg.exact_mode = true;
    auto rr = lmlab::run(cfg);
    CHECK(rr.status == 0);
    CHECK(rr.report["results"]["exact_max_dev"].get<std::string>() == "0");
}

TEST_CASE("run: halasz subcommand with CSV artifact") {
    auto dir = temp_dir();
    auto cfg = base_config("halasz");
    cfg.corpus = "twist";
    cfg.tau0 = 2.0;
    cfg.X = 400;
    cfg.t_bound = 5.0;
    cfg.accuracy = 1e-2;
    cfg.out_csv = (dir / "halasz.csv").string();
    auto rr = lmlab::run(cfg);
    CHECK(rr.status == 0);
    CHECK(std::abs(rr.report["results"]["t0"].get<double>() - 2.0) < 1e-2);
    auto csv = slurp(dir / "halasz.csv");
    CHECK(csv.rfind("t,distance,bound,slack", 0) == 0);  // header row first
    CHECK(rr.report["artifacts"]["csv"].get<std::string>() == cfg.out_csv);
}

TEST_CASE("run: audit subcommand") {
    auto cfg = base_config("audit");
    cfg.corpus = "delta";
    cfg.N = 2000;
    auto rr = lmlab::run(cfg);
    CHECK(rr.status == 0);
    CHECK(rr.report["results"]["grc"]["pass"].get<bool>());
    CHECK(rr.report["results"]["grc"]["violations_tau"].get<int64_t>() == 0);

    cfg.scan_kind = "prime_square";
    cfg.x_list = {1000, 2000};
    auto rr2 = lmlab::run(cfg);
    CHECK(rr2.status == 0);
    CHECK(rr2.report["results"]["scan"]["rows"].size() == 2);
}

TEST_CASE("run: audit twisted_prime scan") {
    auto cfg = base_config("audit");
    cfg.corpus = "delta";
    cfg.N = 1000;
    cfg.scan_kind = "twisted_prime";
    cfg.scan_P = 100.0;
    cfg.scan_Q = 1000.0;
    cfg.t_list = {0.0, 10.0};
    auto rr = lmlab::run(cfg);
    CHECK(rr.status == 0);
    auto rows = rr.report["results"]["twisted_prime"]["rows"];
    REQUIRE(rows.size() == 2);
    CHECK(rows[1]["t"].get<double>() == 10.0);
    CHECK(rows[1]["Q_over_logQ"].get<double>() ==
          doctest::Approx(1000.0 / std::log(1000.0)));
    CHECK(rows[1]["modulus"].get<double>() > 0.0);
}

TEST_CASE("run: moment with weighted report and paper_beta ledger") {
    auto cfg = base_config("moment");
    cfg.corpus = "delta";
    cfg.X = 128;
    cfg.T = 32.0;
    cfg.no_excise = true;
    cfg.with_weighted = true;
    cfg.weighted_alpha = 1.0;
    cfg.mode = "paper_beta";
    cfg.beta = 2.0 / 3.0;
    cfg.eps = 0.05;
    auto rr = lmlab::run(cfg);
    CHECK(rr.status == 0);
    CHECK(rr.report["results"]["weighted"]["value"].get<double>() > 0.0);
    CHECK(rr.report["results"]["weighted"]["alpha"].get<double>() == 1.0);
    auto pb = rr.report["results"]["paper_beta_ledger"];
    CHECK(pb["mode"].get<std::string>() == "paper_beta");
    CHECK(pb["H"].get<double>() == doctest::Approx(std::log(128.0)));
}

TEST_CASE("run: mean-sum subcommand with window audit") {
    auto cfg = base_config("mean-sum");
    cfg.corpus = "delta";
    cfg.x_list = {500, 1000, 2000, 4000};
    cfg.window_X = 1000.0;
    cfg.window_Y = 100.0;
    auto rr = lmlab::run(cfg);
    CHECK(rr.status == 0);
    CHECK(rr.report["results"]["window"]["W_at_X"].get<double>() == 1.0);
    CHECK(rr.report["results"]["window"]["W_at_XY"].get<double>() == 0.0);
    CHECK(rr.report["results"]["window"]["decay_fitted_exponent"].get<double>() > 0.5);
}

TEST_CASE("run: trend subcommand") {
    auto cfg = base_config("trend");
    cfg.corpus = "zeta_like";
    cfg.x_list = {128, 256};
    cfg.mode = "fixed";
    cfg.T = 24.0;
    auto rr = lmlab::run(cfg);
    CHECK(rr.status == 0);
    CHECK(rr.report["results"]["rows"].size() == 2);
}

TEST_CASE("run: build-coeffs writes a loadable table") {
    auto dir = temp_dir();
    auto cfg = base_config("build-coeffs");
    cfg.corpus = "sym2delta";
    cfg.N = 300;
    cfg.out_table = (dir / "sym2.tbl").string();
    auto rr = lmlab::run(cfg);
    CHECK(rr.status == 0);
    auto t = load_table(cfg.out_table);
    CHECK(t.degree == 3);
    CHECK(t.n_max == 300);
}

TEST_CASE("run: read-through cache reproduces the uncached report") {
    auto dir = temp_dir() / "cache_rt";
    fs::remove_all(dir);
    auto cfg = base_config("moment");
    cfg.corpus = "delta";
    cfg.X = 64;
    cfg.T = 16.0;
    cfg.no_excise = true;
    cfg.no_cache = false;
    cfg.cache_dir = dir.string();
    auto first = lmlab::run(cfg);   // builds and caches
    auto second = lmlab::run(cfg);  // loads from cache
    CHECK(masked(first.report) == masked(second.report));
    CHECK(fs::exists(dir));
}

TEST_CASE("run: invalid configs throw") {
    auto bad = base_config("moment");
    bad.corpus = "nope";
    bad.X = 16;
    CHECK_THROWS_AS(lmlab::run(bad), std::invalid_argument);

    auto bad2 = base_config("unknown-sub");
    CHECK_THROWS_AS(lmlab::run(bad2), std::invalid_argument);

    auto bad3 = base_config("mean-sum");
    bad3.corpus = "zeta_like";  // all-ones: rejected by main_term_fit
    bad3.x_list = {100, 200};
    CHECK_THROWS_AS(lmlab::run(bad3), std::invalid_argument);
}

}  // TEST_SUITE
