#pragma once

#include "lmlab/coeff_table.hpp"
#include "lmlab/satake.hpp"

namespace lmlab {

// Discriminant-form corpus: lambda(n) = tau(n) / n^{11/2}, so GRC holds
// (|lambda(p)| <= 2) and the table is exactly multiplicative.
CoefficientTable delta_table(int64_t n_max, int tau_method = 0);

// Satake data of the same corpus: alpha(p), conj(alpha(p)) solved from
// tau(p)/p^{11/2} = 2 cos(theta_p). Supports local coefficients at prime
// powers far beyond any table length.
SatakeSpec delta_satake(int64_t p_max, int tau_method = 0);

// Symmetric-square corpus (d = 3): local parameters {alpha^2, 1, conj(alpha)^2}.
SatakeSpec sym2_satake(int64_t p_max, int tau_method = 0);
CoefficientTable sym_square_table(int64_t n_max, int tau_method = 0);

// Degree-1 all-ones corpus (lambda == 1 identically).
SatakeSpec zeta_satake(int64_t p_max);
CoefficientTable ones_table(int64_t n_max);

// Synthetic pretentious corpus lambda(n) = n^{i tau0} (completely
// multiplicative, unimodular).
CoefficientTable twist_table(int64_t n_max, double tau0);

// lambda'(n) = lambda(n) * n^{i tau0}: the twist used by the equivariance
// property of the distance minimizer.
CoefficientTable twist_of(const CoefficientTable& table, double tau0);

// Positive toy with absolutely convergent Dirichlet series at s=1:
// lambda(n) = mu^2(n)/sqrt(n).
CoefficientTable mu2_toy_table(int64_t n_max);

}  // namespace lmlab
