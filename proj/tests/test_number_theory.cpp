#include "torusloops/number_theory.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

using namespace torusloops;

namespace {

long naive_phi(long n)
{
    long c = 0;
    for (long k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
    return c;
}

}  // namespace

TEST_CASE("gcd convention")
{
    CHECK(gcd_conv(0, 5) == 5);
    CHECK(gcd_conv(-4, 0) == 4);
    CHECK(gcd_conv(-6, 9) == 3);
    CHECK(gcd_conv(0, 0) == 0);
}

TEST_CASE("arithmetic functions against naive definitions")
{
    for (long n = 1; n <= 200; ++n) {
        CHECK(totient(n) == naive_phi(n));
        long dsum = 0, musum = 0;
        for (long d : divisors(n)) {
            dsum += totient(d);
            musum += mobius(d);
        }
        CHECK(dsum == n);
        CHECK(musum == (n == 1 ? 1 : 0));
    }
    CHECK(mobius(30) == -1);
    CHECK(mobius(12) == 0);
}

TEST_CASE("ramanujan sums match the exponential sum")
{
    for (long q = 1; q <= 24; ++q)
        for (long m = 0; m <= 30; ++m) {
            double s = 0.0;
            for (long k = 1; k <= q; ++k)
                if (std::gcd(k, q) == 1) s += std::cos(2.0 * std::numbers::pi * k * m / q);
            CHECK(static_cast<double>(ramanujan_sum(q, m)) == doctest::Approx(s).epsilon(1e-9));
        }
}

TEST_CASE("chebyshev polynomials")
{
    for (double x : {-0.7, 0.2, 1.0})
        for (long k = 0; k <= 8; ++k)
            CHECK(chebyshev_T(k, std::cos(x)) == doctest::Approx(std::cos(k * x)).epsilon(1e-12));
}

TEST_CASE("formal Gamma and Lambda evaluate to the numeric forms")
{
    for (long d = 1; d <= 12; ++d)
        for (long m = 0; m < d; ++m)
            for (double g : {0.0, 0.4, 1.7})
                CHECK(gamma_dm_formal(d, m).evaluate(g) == doctest::Approx(gamma_dm(d, m, g)).epsilon(1e-12));
    for (long M = 1; M <= 12; ++M)
        for (long N : divisors(M))
            for (double e0 : {0.0, 1.0 / 3.0, 0.4})
                CHECK(lambda_formal(M, N).evaluate(std::numbers::pi * e0) ==
                      doctest::Approx(lambda_fsz(M, N, e0)).epsilon(1e-12));
}

TEST_CASE("Gamma is half of Lambda")
{
    for (long d = 1; d <= 30; ++d)
        for (long m = 1; m <= d; ++m)
            for (double g : {0.0, 0.3, 1.0, 2.6, std::numbers::pi - 0.1})
                CHECK(std::abs(gamma_dm(d, m, g) - 0.5 * lambda_fsz(d, d / gcd_conv(m, d), g / std::numbers::pi)) <
                      1e-10);
}

TEST_CASE("Gamma at gamma = 0 is a residue indicator")
{
    for (long d = 1; d <= 15; ++d)
        for (long m = 0; m < 2 * d; ++m) CHECK(gamma_dm(d, m, 0.0) == doctest::Approx(m % d == 0 ? 1.0 : 0.0));
    CHECK(gamma_dm_formal(4, 1).str() == "-1/4*cos(2g) + 1/4*cos(4g)");
}

TEST_CASE("set identities and the master lemma")
{
    for (long d = 1; d <= 12; ++d) CHECK(verify_s1_s2(d, 25));
    for (long a = 1; a <= 10; ++a)
        for (long l = 1; l <= 50; ++l) CHECK(verify_master(a, l));
    CHECK_THROWS_AS(verify_s1_s2(0, 5), std::invalid_argument);
}

TEST_CASE("arith cache agrees with the free functions")
{
    const ArithCache& c = ArithCache::shared();
    for (long n = 1; n <= 100; ++n) {
        CHECK(c.mu(n) == mobius(n));
        CHECK(c.phi(n) == totient(n));
        CHECK(c.divisors(n) == divisors(n));
    }
}
