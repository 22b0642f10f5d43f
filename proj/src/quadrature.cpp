#include "lmlab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "lmlab/util.hpp"

namespace lmlab {

namespace {

template <typename T>
struct Pass {
    T value;
    double step;
};

template <typename T, typename BatchF>
Pass<T> simpson_pass(const BatchF& batch_f, double a, double b, size_t n_intervals) {
    double h = (b - a) / static_cast<double>(n_intervals);
    std::vector<double> ts(n_intervals + 1);
    for (size_t i = 0; i <= n_intervals; ++i) ts[i] = a + h * static_cast<double>(i);
    ts.back() = b;
    std::vector<T> f(ts.size());
    batch_f(ts, f);
    std::vector<T> weighted(f.size());
    weighted.front() = f.front();
    weighted.back() = f.back();
    for (size_t i = 1; i < n_intervals; ++i)
        weighted[i] = (i % 2 == 1) ? 4.0 * f[i] : 2.0 * f[i];
    T sum = pairwise_sum(weighted);
    return {sum * (h / 3.0), h};
}

template <typename T, typename BatchF, typename Res>
Res run(const BatchF& batch_f, double a, double b, const QuadratureSpec& spec,
        double step_cap) {
    if (!(a < b)) throw std::invalid_argument("simpson: need a < b");
    double h0 = std::min(spec.base_step, step_cap);
    if (h0 <= 0.0) throw std::invalid_argument("simpson: nonpositive step");
    size_t n0 = static_cast<size_t>(std::ceil((b - a) / h0));
    if (n0 % 2) ++n0;
    if (n0 < 2) n0 = 2;

    Res res;
    T prev{};
    for (int level = 0; level <= spec.max_refinements; ++level) {
        auto pass = simpson_pass<T>(batch_f, a, b, n0 << level);
        res.value = pass.value;
        res.step = pass.step;
        res.refinements = level;
        if (level > 0) {
            double change = std::abs(pass.value - prev);
            double scale = std::max(std::abs(pass.value), 1e-300);
            res.last_change = change / scale;
            if (res.last_change < spec.tol_rel) {
                res.converged = true;
                return res;
            }
        }
        prev = pass.value;
    }
    return res;  // best value, converged == false
}

}  // namespace

QuadResult simpson_converge(
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& batch_f,
    double a, double b, const QuadratureSpec& spec, double step_cap) {
    return run<double, decltype(batch_f), QuadResult>(batch_f, a, b, spec, step_cap);
}

QuadResultC simpson_converge_complex(
    const std::function<void(const std::vector<double>&, std::vector<std::complex<double>>&)>&
        batch_f,
    double a, double b, const QuadratureSpec& spec, double step_cap) {
    return run<std::complex<double>, decltype(batch_f), QuadResultC>(batch_f, a, b, spec,
                                                                     step_cap);
}

}  // namespace lmlab
