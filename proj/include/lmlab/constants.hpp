#pragma once

#include <stdexcept>

namespace lmlab {

// Degree-indexed constants used by the Halasz audit and the moment
// normalizations. kappa_d is the lower-bound constant of the distance
// functional; rho_d and eta_d are the exponent choices carried through the
// parameter ledger; theta_d bounds the archimedean parameters and is recorded
// for reference only (nothing in this laboratory consumes it).
struct ConstantsLedger {
    int d;
    double theta_d;
    double kappa_d;  // (1/(3d)) * (1 - (2d^2/pi) sin(pi/(2d^2)))
    double rho_d;    // 1/(100 d^3)
    double eta_d;    // 1/(400 d^4)
    double beta;     // zero-free exponent, user-settable

    explicit ConstantsLedger(int degree, double beta_exp = 2.0 / 3.0);

    // rho_d < kappa_d. Holds at d = 3 but fails for 4 <= d <= 64 with the
    // rho_d = 1/(100 d^3) choice; callers decide what to do with the verdict.
    bool rho_below_kappa() const { return rho_d > 0.0 && rho_d < kappa_d; }

    // eta_d <= rho_d/(3d+2): the headline exponent is consistent with the
    // exponent delivered by the decomposition argument.
    bool eta_consistent() const { return eta_d <= rho_d / (3.0 * d + 2.0); }
};

double kappa_constant(int d);

}  // namespace lmlab
