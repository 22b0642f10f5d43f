#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lmlab/coeff_table.hpp"
#include "lmlab/rational.hpp"
#include "lmlab/util.hpp"

namespace lmlab {

struct DecompositionParams {
    int64_t X = 0;
    double P = 0.0;
    double Q = 0.0;
    double H = 0.0;

    int j_lo() const;  // floor(H log P)
    int j_hi() const;  // floor(H log Q)
    void validate() const;
};

// The exact identity split of sum_{n<=X} f(n) n^{-s}:
//   sum_j Q_{j,H} * F_{j,H}  -  overcount  +  pm-correction  +  rough part.
// Weights 1/(omega+1) are kept as exact rationals; f enters only at
// materialization.
struct RamareDecomposition {
    DecompositionParams params;
    int64_t n_hi = 0;  // ceil(X e^{1/H}), reach of the convolution supports

    struct QPiece {
        int j;
        std::vector<int64_t> primes;  // in [P,Q] with floor(H log p) == j
        std::vector<cplx> f_p;
    };
    struct FPiece {
        int j;
        int64_t m_max;  // floor(X e^{-j/H}); coefficient at m is f(m)/(omega(m)+1)
    };
    struct Correction {  // at n = p*m <= X with p | m:
        int64_t p;       //   f(pm)/omega(m) - f(p) f(m)/(omega(m)+1)
        int64_t m;
        cplx value;
    };
    struct Overcount {  // (p, m, j) with p in window j, m <= X e^{-j/H}, pm > X
        int64_t p;
        int64_t m;
        int j;
    };

    std::vector<QPiece> q_pieces;
    std::vector<FPiece> f_pieces;
    std::vector<Correction> pm_corrections;
    std::vector<Overcount> overcounts;
    std::vector<int64_t> rough;  // n <= X with no prime factor in [P, Q]

    std::vector<int> omega;  // omega_{[P,Q]}(m) for m <= n_hi
    std::vector<cplx> f;     // f(1..n_hi) copied from the table
    std::string source;

    int64_t q_support_total() const;
};

// #{p prime : p | m, P <= p <= Q}.
int omega_range(int64_t m, double P, double Q);

// Ramare's identity weight: sum over factorizations n = m p with p prime in
// [P, Q] of 1/(omega_{[P,Q]}(m) + 1_{p not| m}), in exact rational
// arithmetic. Equals 1 exactly when n has a prime factor in [P, Q], else 0.
Rat ramare_weight(int64_t n, double P, double Q);

RamareDecomposition decompose(const CoefficientTable& table, const DecompositionParams& params);

struct ReassemblyResult {
    std::vector<cplx> combined;  // index n in [1, n_hi]
    double max_rel_dev = 0.0;    // max |combined - f 1_{n<=X}| / (1 + |f(n)|)
    int64_t argmax = 0;
};

// Recombines the pieces at coefficient level and compares against
// f(n) 1_{n<=X}. A deviation beyond 1e-10 signals a decomposition bug; the
// caller decides whether to throw (check_reassembly does).
ReassemblyResult reassemble(const RamareDecomposition& decomp);
void check_reassembly(const RamareDecomposition& decomp, double tol = 1e-10);

// Exact-rational reassembly for integer-valued tables (lambda == 1 case):
// returns the maximum absolute deviation as a rational, exactly.
Rat reassemble_exact_max_dev(const RamareDecomposition& decomp);

enum class ParamMode { paper, paper_beta, desk };

struct SelectedParams {
    ParamMode mode = ParamMode::paper;
    double X = 0.0;
    int d = 0;
    double P = 0.0;
    double Q = 0.0;
    double H = 0.0;
    double Z = 0.0;
    bool infeasible = false;  // P >= Q at this X
    double beta = 0.0;        // paper_beta inputs, echoed
    double eps = 0.0;
};

// The parameter selections of the two proofs, evaluated literally. paper:
// Q = exp(log X/log log X), P = exp(log^{1-rho_d/(3d+2)} X),
// H = (log X)^{rho_d/(3d+2)}, Z = log X. paper_beta: P = exp(log^{beta+eps} X),
// H = log X. desk: caller-supplied P, Q, H validated against P < Q <= X.
SelectedParams select_parameters(double X, int d, ParamMode mode, double beta = 0.0,
                                 double eps = 0.0,
                                 std::optional<DecompositionParams> desk = std::nullopt);

}  // namespace lmlab
