#include "torusloops/number_theory.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

namespace torusloops {

namespace {

constexpr double kImagTolerance = 1e-12;

long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long positive_mod(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

long gcd_conv(long a, long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

ArithCache::ArithCache(long bound) : bound_(bound), mu_(bound + 1, 1), phi_(bound + 1), divisors_(bound + 1)
{
    if (bound < 1) throw std::invalid_argument("ArithCache bound must be positive");
    std::iota(phi_.begin(), phi_.end(), 0L);
    std::vector<bool> composite(bound + 1, false);
    mu_[0] = 0;
    for (long p = 2; p <= bound; ++p) {
        if (composite[p]) continue;
        for (long k = p; k <= bound; k += p) {
            if (k > p) composite[k] = true;
            mu_[k] = -mu_[k];
            phi_[k] -= phi_[k] / p;
        }
        for (long k = p * p; k <= bound; k += p * p) mu_[k] = 0;
    }
    for (long a = 1; a <= bound; ++a)
        for (long k = a; k <= bound; k += a) divisors_[k].push_back(a);
}

int ArithCache::mu(long n) const
{
    if (n < 1 || n > bound_) throw std::out_of_range("mu argument outside cache");
    return mu_[n];
}

long ArithCache::phi(long n) const
{
    if (n < 1 || n > bound_) throw std::out_of_range("phi argument outside cache");
    return phi_[n];
}

const std::vector<long>& ArithCache::divisors(long n) const
{
    if (n < 1 || n > bound_) throw std::out_of_range("divisors argument outside cache");
    return divisors_[n];
}

const ArithCache& ArithCache::shared()
{
    static const ArithCache cache(20000);
    return cache;
}

std::vector<std::pair<long, int>> factorize(long n)
{
    if (n < 1) throw std::invalid_argument("factorize needs a positive integer");
    std::vector<std::pair<long, int>> out;
    for (long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

int mobius(long n)
{
    const auto& c = ArithCache::shared();
    if (n <= c.bound()) return c.mu(n);
    int s = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        s = -s;
    }
    return s;
}

long totient(long n)
{
    const auto& c = ArithCache::shared();
    if (n <= c.bound()) return c.phi(n);
    long r = n;
    for (auto [p, e] : factorize(n)) r -= r / p;
    return r;
}

std::vector<long> divisors(long n)
{
    const auto& c = ArithCache::shared();
    if (n <= c.bound()) return c.divisors(n);
    std::vector<long> out;
    for (long a = 1; a <= n; ++a)
        if (n % a == 0) out.push_back(a);
    return out;
}

long ramanujan_sum(long q, long m)
{
    long g = gcd_conv(q, m);
    long s = 0;
    for (long a : divisors(g)) s += mobius(q / a) * a;
    return s;
}

double gamma_v(long d, long m, double alpha, int v)
{
    if (d == 0) throw std::invalid_argument("gamma_v needs d != 0");
    const long ad = d < 0 ? -d : d;
    std::complex<double> s = 0.0;
    auto sign = [](long e) { return (e % 2 == 0) ? 1 : -1; };
    for (long j = 0; j < ad; ++j) {
        int w = 1 + sign(j + v) + sign(m) + sign(m + j + d + v);
        if (w == 0) continue;
        double phase = std::numbers::pi * static_cast<double>(j * m) / static_cast<double>(d);
        s += static_cast<double>(w) * std::polar(1.0, phase) * chebyshev_T(gcd_conv(d, j), alpha / 2.0);
    }
    s /= static_cast<double>(2 * ad);
    if (std::abs(s.imag()) > kImagTolerance * std::max(1.0, std::abs(s.real())))
        throw std::runtime_error("gamma_v: imaginary residue above tolerance");
    return s.real();
}

double gamma_dm(long d, long m, double gamma)
{
    if (d <= 0) throw std::invalid_argument("gamma_dm needs d > 0");
    std::complex<double> s = 0.0;
    for (long j = 1; j <= d; ++j) {
        double phase = 2.0 * std::numbers::pi * static_cast<double>(positive_mod(j * m, d)) / static_cast<double>(d);
        s += std::polar(1.0, phase) * std::cos(static_cast<double>(gcd_conv(d, j)) * gamma);
    }
    s /= static_cast<double>(d);
    if (std::abs(s.imag()) > kImagTolerance * std::max(1.0, std::abs(s.real())))
        throw std::runtime_error("gamma_dm: imaginary residue above tolerance");
    return s.real();
}

CosPoly gamma_dm_formal(long d, long m)
{
    if (d <= 0) throw std::invalid_argument("gamma_dm needs d > 0");
    CosPoly r;
    for (long g : divisors(d)) r.add(g, make_rational(ramanujan_sum(d / g, m), d));
    return r;
}

namespace {

/// Visit every exponent vector gamma_i in [beta_i, alpha_i] for the primes of M.
template <class Visit>
void for_each_gamma(long M, long N, Visit&& visit)
{
    if (M <= 0 || N <= 0) throw std::invalid_argument("Lambda needs positive M, N");
    if (M % N != 0) throw std::invalid_argument("Lambda needs N | M");
    auto fac = factorize(M);
    std::vector<int> lo, hi;
    for (auto [p, a] : fac) {
        int b = 0;
        for (long t = N; t % p == 0; t /= p) ++b;
        lo.push_back(b);
        hi.push_back(a);
    }
    std::vector<int> g = lo;
    const std::size_t k = fac.size();
    while (true) {
        visit(fac, g);
        std::size_t i = 0;
        for (; i < k; ++i) {
            if (g[i] < hi[i]) {
                ++g[i];
                break;
            }
            g[i] = lo[i];
        }
        if (i == k) break;
    }
}

long ipow(long b, int e)
{
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

template <class Emit>
void lambda_terms(long M, long N, Emit&& emit)
{
    for_each_gamma(M, N, [&](const std::vector<std::pair<long, int>>& fac, const std::vector<int>& g) {
        long denom = 1;
        for (std::size_t i = 0; i < fac.size(); ++i) denom *= ipow(fac[i].first, g[i]);
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < fac.size(); ++i)
            if (g[i] >= 1) active.push_back(i);
        for (unsigned mask = 0; mask < (1u << active.size()); ++mask) {
            long arg = denom;
            int sign = 1;
            for (std::size_t b = 0; b < active.size(); ++b) {
                if (mask & (1u << b)) {
                    arg /= fac[active[b]].first;
                    sign = -sign;
                }
            }
            emit(make_rational(2 * sign, denom), arg);
        }
    });
}

}  // namespace

double lambda_prime_form(long M, long N, double e0)
{
    double s = 0.0;
    lambda_terms(M, N, [&](const Rational& c, long arg) {
        s += c.get_d() * std::cos(std::numbers::pi * e0 * static_cast<double>(arg));
    });
    return s;
}

double lambda_divisor_form(long M, long N, double e0)
{
    if (M <= 0 || N <= 0 || M % N != 0) throw std::invalid_argument("Lambda needs N | M");
    const double gamma = std::numbers::pi * e0;
    double half = 0.0;
    for (long r : divisors(M / N)) {
        const long nr = N * r;
        double inner = 0.0;
        for (long a : divisors(nr)) inner += mobius(a) * std::cos(static_cast<double>(nr / a) * gamma);
        half += inner / static_cast<double>(nr);
    }
    return 2.0 * half;
}

double lambda_fsz(long M, long N, double e0)
{
    double a = lambda_prime_form(M, N, e0);
    double b = lambda_divisor_form(M, N, e0);
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
        throw std::runtime_error("lambda_fsz: prime and divisor forms disagree");
    return a;
}

CosPoly lambda_formal(long M, long N)
{
    CosPoly r;
    lambda_terms(M, N, [&](const Rational& c, long arg) { r.add(arg, c); });
    return r;
}

bool verify_s1_s2(long d, long window)
{
    if (d <= 0 || window < 0) throw std::invalid_argument("verify_s1_s2 needs d > 0 and window >= 0");
    std::multiset<std::pair<long, long>> s1;
    for (long m = 1; m <= d; ++m) {
        const long g = gcd_conv(m, d);
        for (long l = -window - 2; l <= window + 2; ++l) {
            long P = (m - l * d) / g;
            if (std::labs(P) <= window) s1.emplace(P, d / g);
        }
    }
    std::set<std::pair<long, long>> s2;
    for (long N : divisors(d))
        for (long P = -window; P <= window; ++P)
            if (gcd_conv(P, N) == 1) s2.emplace(P, N);

    std::set<std::pair<long, long>> s1_unique(s1.begin(), s1.end());
    if (s1_unique.size() != s1.size()) return false;
    if (s1_unique != s2) return false;

    for (auto [P, N] : s2) {
        const long x = P * (d / N);
        const long m = positive_mod(x - 1, d) + 1;
        const long l = floor_div(m - x, d);
        if (m - l * d != x) return false;
        const long g = gcd_conv(m, d);
        if ((m - l * d) / g != P || d / g != N) return false;
    }
    return true;
}

Rational master_lhs(long a, long l)
{
    if (a <= 0 || l <= 0) throw std::invalid_argument("verify_master needs positive a, l");
    Rational s = 0;
    for (long k : divisors(l)) s += Rational(mobius(a * k), a * k);
    Rational r = make_rational(a * l, totient(a * l)) * s;
    r.canonicalize();
    return r;
}

bool verify_master(long a, long l)
{
    Rational rhs(mobius(a), totient(a));
    rhs.canonicalize();
    return master_lhs(a, l) == rhs;
}

}  // namespace torusloops
