#include <cmath>
#include <complex>

#include "doctest.h"
#include "lmlab/satake.hpp"
#include "oracles.hpp"

using namespace lmlab;

TEST_SUITE("satake") {

TEST_CASE("unitary_satake basics") {
    auto spec = unitary_satake(7, 1, 50, false);
    for (const auto& a : spec.alphas) CHECK(std::abs(std::abs(a) - 1.0) < 1e-15);
    spec.validate();

    auto sd = unitary_satake(7, 3, 50, true);
    sd.validate();  // conjugation closure checked inside

    auto again = unitary_satake(7, 3, 50, true);
    CHECK(sd.spec_hash() == again.spec_hash());
    CHECK(sd.alphas == again.alphas);

    CHECK_THROWS_AS(unitary_satake(7, 0, 50, false), std::invalid_argument);
    CHECK_THROWS_AS(unitary_satake(7, 2, 1, false), std::invalid_argument);
}

static SatakeSpec explicit_spec(int d, std::vector<cplx> per_prime, int64_t p) {
    SatakeSpec s;
    s.degree = d;
    s.p_max = p;
    s.grc_asserted = false;
    s.self_dual = false;
    s.primes = {p};
    s.alphas = std::move(per_prime);
    s.source = "explicit-test";
    return s;
}

TEST_CASE("local_coeffs closed forms") {
    // d=1, alpha=1: lambda(p^r) = 1
    auto s1 = explicit_spec(1, {cplx(1.0, 0.0)}, 2);
    auto lc1 = local_coeffs(s1, 2, 10);
    for (const auto& v : lc1) CHECK(std::abs(v - cplx(1.0, 0.0)) < 1e-14);

    // d=2, alpha = e^{i pi/2}: sin((r+1)theta)/sin(theta) oracle
    double th = M_PI / 2.0;
    auto s2 = explicit_spec(2, {std::polar(1.0, th), std::polar(1.0, -th)}, 2);
    auto lc2 = local_coeffs(s2, 2, 8);
    CHECK(std::abs(lc2[1] - cplx(0.0, 0.0)) < 1e-14);
    CHECK(std::abs(lc2[2] - cplx(-1.0, 0.0)) < 1e-14);
    CHECK(std::abs(lc2[3] - cplx(0.0, 0.0)) < 1e-14);
    CHECK(std::abs(lc2[4] - cplx(1.0, 0.0)) < 1e-14);
    for (int r = 0; r <= 8; ++r)
        CHECK(std::abs(lc2[static_cast<size_t>(r)].real() - oracles::chebyshev_lambda(th, r)) <
              1e-12);

    // d=3, all ones, r=2 -> C(4,2) = 6
    auto s3 = explicit_spec(3, {cplx(1, 0), cplx(1, 0), cplx(1, 0)}, 2);
    CHECK(std::abs(local_coeffs(s3, 2, 2)[2] - cplx(6.0, 0.0)) < 1e-12);

    CHECK_THROWS_AS(local_coeffs(s3, 5, 2), std::invalid_argument);  // unknown prime
}

TEST_CASE("local_coeffs vs brute-force enumeration over seeded specs") {
    for (uint64_t seed = 0; seed < 12; ++seed) {
        for (int d = 2; d <= 5; ++d) {
            auto spec = unitary_satake(seed, d, 20, seed % 2 == 0);
            for (int64_t p : spec.primes) {
                auto got = local_coeffs(spec, p, 6);
                std::vector<cplx> a(spec.at(p).begin(), spec.at(p).end());
                for (int r = 0; r <= 6; ++r) {
                    cplx want = oracles::brute_homogeneous(a, r);
                    CHECK(std::abs(got[static_cast<size_t>(r)] - want) <=
                          1e-12 * std::max(1.0, std::abs(want)));
                }
            }
        }
    }
}

TEST_CASE("power_sums") {
    auto s2 = explicit_spec(2, {cplx(0.0, 1.0), cplx(0.0, -1.0)}, 3);
    auto a = power_sums(s2, 3, 4);
    CHECK(std::abs(a[0] - cplx(0.0, 0.0)) < 1e-15);   // a(p) = i + (-i) = 0
    CHECK(std::abs(a[1] - cplx(-2.0, 0.0)) < 1e-15);  // i^2 + (-i)^2 = -2

    auto s1 = explicit_spec(1, {cplx(1.0, 0.0)}, 3);
    auto a1 = power_sums(s1, 3, 5);
    for (const auto& v : a1) CHECK(std::abs(v - cplx(1.0, 0.0)) < 1e-15);

    // a(p) equals the r=1 local coefficient
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        auto spec = unitary_satake(seed, 4, 10, false);
        for (int64_t p : spec.primes)
            CHECK(std::abs(power_sums(spec, p, 1)[0] - local_coeffs(spec, p, 1)[1]) < 1e-13);
    }
}

TEST_CASE("rankin_selberg_local") {
    // d=1: c_k = 1 for all k
    auto s1 = explicit_spec(1, {std::polar(1.0, 0.7)}, 2);
    auto c1 = rankin_selberg_local(s1, 2, 6);
    for (double v : c1) CHECK(std::abs(v - 1.0) < 1e-12);

    // d=2, alpha = i: products {1,-1,-1,1}; c1 = 0, c2 = 2
    auto s2 = explicit_spec(2, {cplx(0.0, 1.0), cplx(0.0, -1.0)}, 2);
    auto c2 = rankin_selberg_local(s2, 2, 4);
    CHECK(c2[0] == 1.0);  // k=0 -> 1
    CHECK(std::abs(c2[1]) < 1e-12);
    CHECK(std::abs(c2[2] - 2.0) < 1e-12);

    // brute-force h_k over the products, seeded specs
    for (uint64_t seed = 0; seed < 6; ++seed) {
        for (int d = 2; d <= 4; ++d) {
            auto spec = unitary_satake(seed, d, 8, false);
            for (int64_t p : spec.primes) {
                auto got = rankin_selberg_local(spec, p, 5);
                auto al = spec.at(p);
                std::vector<cplx> prods;
                for (const auto& x : al)
                    for (const auto& y : al) prods.push_back(x * std::conj(y));
                for (int k = 0; k <= 5; ++k) {
                    cplx want = oracles::brute_homogeneous(prods, k);
                    CHECK(std::abs(want.imag()) < 1e-9);
                    CHECK(std::abs(got[static_cast<size_t>(k)] - want.real()) <=
                          1e-10 * std::max(1.0, std::abs(want.real())));
                }
            }
        }
    }
}

}  // TEST_SUITE
