#include "lmlab/constants.hpp"

#include <cmath>

namespace lmlab {

double kappa_constant(int d) {
    if (d < 1) throw std::invalid_argument("kappa_constant: d must be >= 1");
    double x = M_PI / (2.0 * d * d);
    return (1.0 - std::sin(x) / x) / (3.0 * d);
}

static double theta_constant(int d) {
    switch (d) {
        case 1: return 0.0;
        case 2: return 7.0 / 64.0;
        case 3: return 5.0 / 14.0;
        case 4: return 9.0 / 22.0;
        default: return 0.5 - 1.0 / (static_cast<double>(d) * d + 1.0);
    }
}

ConstantsLedger::ConstantsLedger(int degree, double beta_exp) : d(degree), beta(beta_exp) {
    if (degree < 1) throw std::invalid_argument("ConstantsLedger: d must be >= 1");
    theta_d = theta_constant(degree);
    kappa_d = kappa_constant(degree);
    double dd = static_cast<double>(degree);
    rho_d = 1.0 / (100.0 * dd * dd * dd);
    eta_d = 1.0 / (400.0 * dd * dd * dd * dd);
}

}  // namespace lmlab
