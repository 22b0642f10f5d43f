#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lmlab/satake.hpp"
#include "lmlab/util.hpp"

namespace lmlab {

// n -> lambda(n) for n <= N. The universal currency between modules.
struct CoefficientTable {
    enum class Kind { standard, rankin_selberg, boxplus, tau_d, synthetic };

    int degree = 0;
    int64_t n_max = 0;
    std::vector<cplx> values;  // values[n] for 1 <= n <= N; values[0] unused
    Kind kind = Kind::standard;
    std::string source;  // shared corpus identity, e.g. "delta"
    std::string params;  // builder parameters, e.g. "N=100000"

    cplx at(int64_t n) const;
    static const char* kind_name(Kind k);
};

// Multiplicative extension by sieve over prime powers: lambda(n) is the
// product of the local coefficients at the prime powers dividing n. The spec
// must cover every prime <= N.
CoefficientTable extend_multiplicative(const SatakeSpec& spec, int64_t n_max,
                                       CoefficientTable::Kind kind);

// lambda_{1 boxplus pi}(n) = sum_{l | n} lambda(l), by divisor sieve.
CoefficientTable boxplus_coeffs(const CoefficientTable& table, int64_t n_max);

// d-fold divisor function; tau_d(p^r) = C(r+d-1, d-1). Throws on overflow.
int64_t tau_d(int64_t n, int d);

struct GrcAuditReport {
    int64_t n_checked = 0;
    double max_ratio_tau = 0.0;   // max |lambda(n)| / tau_d(n)
    int64_t argmax_tau = 0;
    double max_ratio_rs = 0.0;    // max |lambda(n)|^2 / lambda_RS(n)
    int64_t argmax_rs = 0;
    int64_t violations_tau = 0;   // ratio beyond 1 + 1e-9
    int64_t violations_rs = 0;
    double rs_max_imag = 0.0;     // lambda_RS should be real ...
    double rs_min_real = 0.0;     // ... and nonnegative
    bool rs_real_ok = false;      // |imag| <= 1e-11
    bool rs_nonneg_ok = false;    // real >= -1e-11
    bool pass() const {
        return violations_tau == 0 && violations_rs == 0 && rs_real_ok && rs_nonneg_ok;
    }
};

// |lambda(n)| <= tau_d(n) and |lambda(n)|^2 <= lambda_RS(n), scanned over the
// common range. Tables must share a source.
GrcAuditReport grc_audit(const CoefficientTable& table, const CoefficientTable& rs_table);

enum class ScanKind { prime_square, short_interval, boxplus_short, rough_sieve, rs_average };

struct ScanParams {
    std::vector<int64_t> x_grid;
    double Y = 0.0;  // short-interval kinds
    double P = 0.0;  // rough_sieve window
    double Q = 0.0;
};

struct ScanRow {
    double X;
    double observed;
    double reference;
    double ratio;
};

// Measurement-only scans mirroring the coefficient lemmas; each row carries
// the observed sum and the lemma's reference shape. No pass/fail here.
std::vector<ScanRow> diagnostic_scan(const CoefficientTable& table, ScanKind kind,
                                     const ScanParams& params);

const char* scan_kind_name(ScanKind k);

}  // namespace lmlab
