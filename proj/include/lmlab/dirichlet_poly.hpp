#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lmlab/coeff_table.hpp"
#include "lmlab/quadrature.hpp"
#include "lmlab/util.hpp"

namespace lmlab {

// Finite Dirichlet polynomial sum_{n<=N} a_n n^{-it}. Immutable after
// construction; evaluation skips zero coefficients via a compact term list.
class DirichletPolynomial {
  public:
    DirichletPolynomial(std::vector<cplx> coeffs_1_indexed, std::string provenance);

    int64_t support_length() const { return n_max_; }
    const std::vector<cplx>& coeffs() const { return coeff_; }
    const std::string& provenance() const { return prov_; }

    double coeff_abs_sum() const { return abs_sum_; }
    double coeff_sq_sum() const { return sq_sum_; }
    size_t term_count() const { return term_log_.size(); }

    // sum a_n exp(-i t log n); pairwise accumulation over fixed blocks of
    // 1024 terms.
    cplx evaluate(double t) const;

    enum class EvalPath { automatic, direct, accelerated };

    // Pointwise values on a sorted grid. Uniform grids take the chunked
    // phase-rotation path unless direct is forced; the direct path is the
    // oracle the accelerated one is tested against.
    std::vector<cplx> multi_evaluate(const std::vector<double>& t_grid,
                                     EvalPath path = EvalPath::automatic) const;

  private:
    int64_t n_max_ = 0;
    std::vector<cplx> coeff_;  // dense, 1-indexed
    std::vector<double> term_log_;
    std::vector<cplx> term_coeff_;
    double abs_sum_ = 0.0;
    double sq_sum_ = 0.0;
    std::string prov_;

    void accelerated_chunk(const std::vector<double>& t, size_t lo, size_t hi,
                           std::vector<cplx>& out) const;
};

// a_n = lambda(n) for n <= X.
DirichletPolynomial from_table(const CoefficientTable& table, int64_t X);

struct MomentResult {
    double value = 0.0;
    bool converged = false;
    int refinements = 0;
    double last_change = 0.0;
    double step = 0.0;
};

// int_{T1}^{T2} |P(t)|^2 dt by converging composite Simpson; the first step
// obeys h <= min(0.1, 1/(4 log N)).
MomentResult second_moment(const DirichletPolynomial& poly, double T1, double T2,
                           const QuadratureSpec& quad);

// int_1^T t^{-alpha} |P(t)|^2 dt.
MomentResult weighted_second_moment(const DirichletPolynomial& poly, double T, double alpha,
                                    const QuadratureSpec& quad);

// For a polynomial supported on the dyadic block [N, 2N]:
// int_0^T |P|^2 dt / ((T+N) sum |a_n|^2). The mean value theorem says O(1).
double mvt_ratio(const DirichletPolynomial& poly, int64_t block_start, double T,
                 const QuadratureSpec& quad);

// sum over primes p in [P, Q] of lambda(p) p^{-it}, exact finite sum.
cplx twisted_prime_sum(const CoefficientTable& table, double P, double Q, double t);

// Oscillation-resolving first-step cap for |P(t)|^2 integrands.
double poly_step_cap(const DirichletPolynomial& poly);

}  // namespace lmlab
