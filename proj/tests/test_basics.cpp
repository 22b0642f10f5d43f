#include <complex>

#include "doctest.h"
#include "lmlab/constants.hpp"
#include "lmlab/primes.hpp"
#include "lmlab/rational.hpp"
#include "lmlab/util.hpp"

using namespace lmlab;

TEST_SUITE("basics") {

TEST_CASE("splitmix64 determinism") {
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    SplitMix64 c(43);
    CHECK(SplitMix64(42).next() != c.next());
}

TEST_CASE("pairwise_sum matches naive") {
    std::vector<double> v;
    SplitMix64 rng(1);
    double naive = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double x = rng.uniform(-1.0, 1.0);
        v.push_back(x);
        naive += x;
    }
    CHECK(std::abs(pairwise_sum(v) - naive) < 1e-10);
}

TEST_CASE("parallel_chunks covers the range deterministically") {
    std::vector<int> hits(1000, 0);
    parallel_chunks(1000, 37, [&](size_t, size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) hits[i] += 1;
    });
    for (int h : hits) CHECK(h == 1);
}

TEST_CASE("sieve and spf") {
    auto ps = sieve_primes(100);
    CHECK(ps.size() == 25);
    CHECK(ps.front() == 2);
    CHECK(ps.back() == 97);
    auto spf = smallest_prime_factor(100);
    CHECK(spf[97] == 97);
    CHECK(spf[98] == 2);
    CHECK(spf[99] == 3);
    CHECK(omega_in_range(12, 2, 3) == 2);
    CHECK(omega_in_range(12, 3, 5) == 1);
    CHECK(omega_in_range(1, 2, 100) == 0);
}

TEST_CASE("rational arithmetic") {
    Rat a(1, 2), b(1, 3);
    CHECK((a + b) == Rat(5, 6));
    CHECK((a - b) == Rat(1, 6));
    CHECK((a * b) == Rat(1, 6));
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-1, -2) == Rat(1, 2));
    CHECK(Rat(1, -2).num == -1);
    CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
}

TEST_CASE("constants ledger values") {
    ConstantsLedger l3(3);
    // kappa_3 = (1/9)(1 - (18/pi) sin(pi/18)), direct arithmetic
    double kappa3 = (1.0 - (18.0 / M_PI) * std::sin(M_PI / 18.0)) / 9.0;
    CHECK(std::abs(l3.kappa_d - kappa3) < 1e-18);
    CHECK(l3.kappa_d == doctest::Approx(5.6324777e-4).epsilon(1e-6));
    CHECK(l3.rho_d == doctest::Approx(1.0 / 2700.0));
    CHECK(l3.eta_d == doctest::Approx(1.0 / 32400.0));
    CHECK(l3.rho_below_kappa());  // holds at d = 3 ...
    ConstantsLedger l4(4);
    CHECK(!l4.rho_below_kappa());  // ... but fails from d = 4 on with rho = 1/(100 d^3)
    for (int d = 2; d <= 64; ++d) CHECK(ConstantsLedger(d).eta_consistent());
    CHECK(ConstantsLedger(2).theta_d == doctest::Approx(7.0 / 64.0));
    CHECK(ConstantsLedger(6).theta_d == doctest::Approx(0.5 - 1.0 / 37.0));
    CHECK(ConstantsLedger(5).beta == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("i128 helpers") {
    __int128 v = static_cast<__int128>(-123456789) * 1000000007LL;
    CHECK(i128_to_string(v) == "-123456789864197523");
    CHECK(i128_to_ld(v) == doctest::Approx(-1.23456789864e17));
    CHECK(i128_to_string(0) == "0");
}

}  // TEST_SUITE
