#include <cmath>

#include "doctest.h"
#include "lmlab/corpora.hpp"
#include "lmlab/dirichlet_poly.hpp"
#include "oracles.hpp"

using namespace lmlab;

namespace {

DirichletPolynomial make_poly(std::vector<cplx> a) {  // a[0] is the n=1 coefficient
    std::vector<cplx> c(a.size() + 1, cplx(0.0, 0.0));
    for (size_t i = 0; i < a.size(); ++i) c[i + 1] = a[i];
    return DirichletPolynomial(std::move(c), "test");
}

}  // namespace

TEST_SUITE("dirichlet_poly") {

TEST_CASE("from_table and evaluate at simple points") {
    auto ones = ones_table(10);
    auto p3 = from_table(ones, 3);
    CHECK(p3.support_length() == 3);
    CHECK(std::abs(p3.evaluate(0.0) - cplx(3.0, 0.0)) < 1e-14);

    auto p1 = from_table(ones, 1);
    CHECK(std::abs(p1.evaluate(1234.5) - cplx(1.0, 0.0)) < 1e-14);

    auto d = delta_table(10);
    auto pd = from_table(d, 2);
    CHECK(std::abs(pd.coeffs()[2].real() + 0.53033008589) < 1e-10);

    CHECK_THROWS_AS(from_table(ones, 11), std::invalid_argument);
}

TEST_CASE("evaluate closed forms") {
    // a = (0, 1): single term at n=2; t = pi/log 2 -> e^{-i pi} = -1
    auto p = make_poly({cplx(0, 0), cplx(1, 0)});
    double t = M_PI / std::log(2.0);
    CHECK(std::abs(p.evaluate(t) - cplx(-1.0, 0.0)) < 1e-12);

    // a = (1, 1): 1 + (-1) = 0 at the same t
    auto q = make_poly({cplx(1, 0), cplx(1, 0)});
    CHECK(std::abs(q.evaluate(t)) < 1e-12);

    // evaluation at t=0 equals the coefficient sum
    auto d = delta_table(500);
    auto pd = from_table(d, 500);
    cplx sum(0, 0);
    for (int64_t n = 1; n <= 500; ++n) sum += d.at(n);
    CHECK(std::abs(pd.evaluate(0.0) - sum) <= 1e-10 * std::abs(sum));
}

TEST_CASE("conjugation symmetry for real coefficients") {
    auto d = delta_table(300);
    auto p = from_table(d, 300);
    for (double t : {0.3, 1.7, 12.9, 100.0})
        CHECK(std::abs(p.evaluate(-t) - std::conj(p.evaluate(t))) < 1e-12);
}

TEST_CASE("triangle inequality spot checks") {
    auto d = delta_table(400);
    auto p = from_table(d, 400);
    for (double t : {0.0, 2.5, 31.4, 500.0})
        CHECK(std::abs(p.evaluate(t)) <= p.coeff_abs_sum() + 1e-12);
}

TEST_CASE("multi_evaluate: direct vs accelerated within 1e-9 on a 1e5-point grid") {
    auto d = delta_table(256);
    auto p = from_table(d, 256);
    std::vector<double> grid;
    for (int i = 0; i <= 100000; ++i) grid.push_back(-20.0 + 0.0005 * i);
    auto fast = p.multi_evaluate(grid, DirichletPolynomial::EvalPath::accelerated);
    auto slow = p.multi_evaluate(grid, DirichletPolynomial::EvalPath::direct);
    double scale = std::max(1.0, p.coeff_abs_sum());
    double worst = 0.0;
    for (size_t i = 0; i < grid.size(); ++i)
        worst = std::max(worst, std::abs(fast[i] - slow[i]) / scale);
    CHECK(worst < 1e-9);
}

TEST_CASE("second_moment reports non-convergence instead of aborting") {
    auto d = delta_table(512);
    auto p = from_table(d, 512);
    QuadratureSpec strict;
    strict.tol_rel = 1e-14;      // unreachable at
    strict.max_refinements = 1;  // this refinement budget
    auto r = second_moment(p, 3.0, 47.0, strict);
    CHECK(!r.converged);
    CHECK(r.refinements == 1);
    CHECK(r.value > 0.0);  // best value still returned
}

TEST_CASE("multi_evaluate edge cases") {
    auto p = make_poly({cplx(1, 0), cplx(0.5, 0.5)});
    CHECK(p.multi_evaluate({}).empty());
    auto one = p.multi_evaluate({3.7});
    CHECK(std::abs(one[0] - p.evaluate(3.7)) < 1e-13);
    CHECK_THROWS_AS(p.multi_evaluate({1.0, 0.5}), std::invalid_argument);  // unsorted
}

TEST_CASE("second_moment oracles") {
    // constant polynomial over [0, 10] -> 10
    auto c = make_poly({cplx(1, 0)});
    QuadratureSpec quad;
    auto r = second_moment(c, 0.0, 10.0, quad);
    CHECK(r.value == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(r.converged);

    // single unit coefficient at n = N: |P| = 1, integral = T2 - T1
    auto u = make_poly({cplx(0, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)});
    auto r2 = second_moment(u, 3.0, 17.0, quad);
    CHECK(r2.value == doctest::Approx(14.0).epsilon(1e-9));

    // 1 + 2^{-it} over one period [0, 2 pi/log 2] -> 4 pi / log 2
    auto q = make_poly({cplx(1, 0), cplx(1, 0)});
    double period = 2.0 * M_PI / std::log(2.0);
    auto r3 = second_moment(q, 0.0, period, quad);
    CHECK(r3.value == doctest::Approx(4.0 * M_PI / std::log(2.0)).epsilon(1e-3));

    CHECK_THROWS_AS(second_moment(q, 1.0, 1.0, quad), std::invalid_argument);
}

TEST_CASE("weighted_second_moment") {
    QuadratureSpec quad;
    // alpha = 0 equals the plain moment on [1, T]
    auto q = make_poly({cplx(1, 0), cplx(1, 0)});
    auto w0 = weighted_second_moment(q, 20.0, 0.0, quad);
    auto plain = second_moment(q, 1.0, 20.0, quad);
    CHECK(w0.value == doctest::Approx(plain.value).epsilon(1e-6));

    // a = (1), alpha = 1, T = e -> int_1^e dt/t = 1
    auto c = make_poly({cplx(1, 0)});
    auto we = weighted_second_moment(c, std::exp(1.0), 1.0, quad);
    CHECK(we.value == doctest::Approx(1.0).epsilon(1e-6));

    // delta polynomial: finite, positive, monotone in T
    auto d = delta_table(256);
    auto pd = from_table(d, 256);
    auto wa = weighted_second_moment(pd, 25.0, 1.0, quad);
    auto wb = weighted_second_moment(pd, 50.0, 1.0, quad);
    CHECK(wa.value > 0.0);
    CHECK(wb.value >= wa.value * (1.0 - 1e-6));

    CHECK_THROWS_AS(weighted_second_moment(c, 1.0, 1.0, quad), std::invalid_argument);
}

TEST_CASE("quadrature convergence is stable for randomized polynomials") {
    SplitMix64 rng(2024);
    QuadratureSpec quad;
    for (int trial = 0; trial < 20; ++trial) {
        size_t n = 8 + rng.below(56);
        std::vector<cplx> a;
        for (size_t i = 0; i < n; ++i)
            a.push_back(std::polar(rng.u01(), 2.0 * M_PI * rng.u01()));
        auto p = make_poly(std::move(a));
        auto r = second_moment(p, 0.0, 30.0, quad);
        CHECK(r.converged);
        CHECK(r.last_change < quad.tol_rel);
        CHECK(r.value >= 0.0);
    }
}

TEST_CASE("mvt_ratio") {
    QuadratureSpec quad;
    // single term at n = N: ratio = T/(T+N)
    std::vector<cplx> c(65, cplx(0, 0));
    c[32] = cplx(1, 0);
    DirichletPolynomial p(std::move(c), "single");
    double t = 100.0;
    CHECK(mvt_ratio(p, 32, t, quad) == doctest::Approx(t / (t + 32.0)).epsilon(1e-3));

    // T -> 0+ limit: ratio -> 0
    CHECK(mvt_ratio(p, 32, 1e-4, quad) < 1e-5);

    // all-ones block [64, 128], T = 1000: bounded by 3
    std::vector<cplx> b(129, cplx(0, 0));
    for (int n = 64; n <= 128; ++n) b[static_cast<size_t>(n)] = cplx(1, 0);
    DirichletPolynomial pb(std::move(b), "block");
    double ratio = mvt_ratio(pb, 64, 1000.0, quad);
    CHECK(ratio <= 3.0);
    CHECK(ratio > 0.1);

    // support outside the dyadic block is rejected
    std::vector<cplx> bad(200, cplx(0, 0));
    bad[10] = cplx(1, 0);
    bad[150] = cplx(1, 0);
    DirichletPolynomial pbad(std::move(bad), "bad");
    CHECK_THROWS_AS(mvt_ratio(pbad, 64, 10.0, quad), std::invalid_argument);

    std::vector<cplx> zero(65, cplx(0, 0));
    DirichletPolynomial pz(std::move(zero), "zero");
    CHECK_THROWS_AS(mvt_ratio(pz, 32, 10.0, quad), std::invalid_argument);
}

TEST_CASE("twisted_prime_sum") {
    auto ones = ones_table(100);
    // t = 0 on [2, 10]: number of primes in range = 4
    auto s = twisted_prime_sum(ones, 2.0, 10.0, 0.0);
    CHECK(std::abs(s - cplx(4.0, 0.0)) < 1e-13);

    // single prime window: lambda(p) p^{-it}, modulus |lambda(p)|
    auto d = delta_table(100);
    auto sp = twisted_prime_sum(d, 7.0, 7.0, 3.3);
    CHECK(std::abs(std::abs(sp) - std::abs(d.at(7))) < 1e-13);

    CHECK_THROWS_AS(twisted_prime_sum(ones, 11.0, 7.0, 0.0), std::invalid_argument);
}

TEST_CASE("parseval diagonal for the all-ones polynomial") {
    int64_t N = 96;
    auto ones = ones_table(N);
    auto p = from_table(ones, N);
    double T = 100.0 * static_cast<double>(N) * std::log(static_cast<double>(N));
    QuadratureSpec quad;
    auto r = second_moment(p, 0.0, T, quad);
    double ratio = r.value / (T * static_cast<double>(N));
    CHECK(ratio > 0.8);
    CHECK(ratio < 1.2);
}

}  // TEST_SUITE
