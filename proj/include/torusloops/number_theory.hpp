#pragma once

#include "torusloops/cos_poly.hpp"
#include "torusloops/rational.hpp"

#include <utility>
#include <vector>

namespace torusloops {

/// gcd of absolute values with i ^ 0 = 0 ^ i = |i|.
long gcd_conv(long a, long b);

/// Chebyshev polynomial of the first kind by the three-term recurrence.
template <class Scalar>
Scalar chebyshev_T(long k, const Scalar& x)
{
    if (k < 0) k = -k;
    Scalar t0(1);
    if (k == 0) return t0;
    Scalar t1(x);
    for (long i = 1; i < k; ++i) {
        Scalar t2 = Scalar(2) * x * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

/// Memoized Moebius, totient and divisor tables on [1, bound].
class ArithCache {
public:
    explicit ArithCache(long bound);

    long bound() const { return bound_; }
    int mu(long n) const;
    long phi(long n) const;
    const std::vector<long>& divisors(long n) const;

    /// Shared table large enough for every in-scope sweep.
    static const ArithCache& shared();

private:
    long bound_;
    std::vector<int> mu_;
    std::vector<long> phi_;
    std::vector<std::vector<long>> divisors_;
};

int mobius(long n);
long totient(long n);
std::vector<long> divisors(long n);
std::vector<std::pair<long, int>> factorize(long n);

/// Ramanujan sum c_q(m) = sum over k coprime to q of exp(2 pi i k m / q); always an integer.
long ramanujan_sum(long q, long m);

/// Gamma^{(v)}_{d,m} at loop weight alpha.
double gamma_v(long d, long m, double alpha, int v);

/// Gamma_{d,m}(gamma) by the direct exponential sum.
double gamma_dm(long d, long m, double gamma);

/// Gamma_{d,m} as an exact combination of cos(k gamma).
CosPoly gamma_dm_formal(long d, long m);

/// Lambda(M,N) from the prime-power expansion.
double lambda_prime_form(long M, long N, double e0);
/// Lambda(M,N) from the divisor sum over r | M/N and a | N r.
double lambda_divisor_form(long M, long N, double e0);
/// Both forms, cross-checked to 1e-12.
double lambda_fsz(long M, long N, double e0);
/// Lambda(M,N) as an exact combination of cos(k pi e0), from the prime-power expansion.
CosPoly lambda_formal(long M, long N);

/// S1 = S2 inside the window |P| <= window, with no repeated elements and a round-trip inverse map.
bool verify_s1_s2(long d, long window);

/// (a l / phi(a l)) sum_{k | l} mu(a k)/(a k), exactly.
Rational master_lhs(long a, long l);
bool verify_master(long a, long l);

}  // namespace torusloops
