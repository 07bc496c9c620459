#include "torusloops/cft.hpp"

#include "torusloops/number_theory.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace torusloops {

namespace {

const Rational kEtaShift = make_rational(1, 24);

/// Integer bound B with B^2 >= x for x >= 0.
long isqrt_ceil(const Rational& x)
{
    if (x <= 0) return 0;
    long b = static_cast<long>(std::ceil(std::sqrt(x.get_d()))) + 1;
    while (Rational(b - 1) * Rational(b - 1) >= x && b > 0) --b;
    return b;
}

template <class Coeff>
BasicBiSeries<Coeff> shift_both(const BasicBiSeries<Coeff>& s, const Rational& by, const Rational& cutoff)
{
    BasicBiSeries<Coeff> r(cutoff, s.valid_order() + by);
    for (const auto& [e, c] : s.terms()) r.add(e.first + by, e.second + by, c);
    return r;
}

/// Multiply a lattice sum with nonnegative exponents by 1/((q)(qbar)) and shift both exponents by -1/24.
template <class Coeff>
BasicBiSeries<Coeff> over_eta_eta(const BasicBiSeries<Coeff>& lattice, const Rational& cutoff)
{
    const Rational wide = cutoff + kEtaShift;
    QSeries e = euler_inverse(wide);
    BasicBiSeries<Coeff> prod = series_mul(lattice, outer(e, e));
    return shift_both(prod, -kEtaShift, cutoff);
}

int sign_pow(long k) { return k % 2 == 0 ? 1 : -1; }

class CharCache {
public:
    CharCache(long n, int z, Rational cutoff) : n_(n), z_(z), cutoff_(std::move(cutoff)) {}
    const QSeries& operator()(long J)
    {
        auto it = cache_.find(J);
        if (it == cache_.end()) it = cache_.emplace(J, u1_char(n_, J, z_, cutoff_)).first;
        return it->second;
    }

private:
    long n_;
    int z_;
    Rational cutoff_;
    std::map<long, QSeries> cache_;
};

}  // namespace

Rational KacData::c() const
{
    return Rational(1) - make_rational(6L * (p - pp) * (p - pp), static_cast<long>(p) * pp);
}

Rational KacData::delta(const Rational& r, const Rational& s) const
{
    Rational a = Rational(pp) * r - Rational(p) * s;
    return (a * a - Rational((p - pp) * (p - pp))) / Rational(4L * p * pp);
}

Rational KacData::reduced_weight(const Rational& r, const Rational& s) const
{
    Rational a = Rational(pp) * r - Rational(p) * s;
    return a * a / Rational(4L * p * pp) - kEtaShift;
}

TauPoint::TauPoint(std::complex<double> t) : tau(t)
{
    if (!(t.imag() > 0.0)) throw std::invalid_argument("Im tau must be positive");
}

TauPoint TauPoint::from_lattice(const ModelSpec& spec, double delta)
{
    const double theta = spec.anisotropy_angle();
    return TauPoint(-delta * std::exp(std::complex<double>(0.0, -theta)));
}

std::complex<double> TauPoint::q() const { return std::exp(2.0 * std::numbers::pi * std::complex<double>(0, 1) * tau); }
std::complex<double> TauPoint::qbar() const { return std::conj(q()); }

QSeries u1_char(long n, long J, int z, const Rational& cutoff)
{
    if (n < 1) throw std::invalid_argument("level must be positive");
    const Rational wide = cutoff + kEtaShift;
    if (wide < 0) throw std::invalid_argument("cutoff below -1/24");
    const long bound = isqrt_ceil(wide * Rational(16 * n));
    QSeries theta(wide);
    const long kmin = static_cast<long>(std::floor(static_cast<double>(-bound - J) / (4.0 * n))) - 1;
    const long kmax = static_cast<long>(std::ceil(static_cast<double>(bound - J) / (4.0 * n))) + 1;
    for (long k = kmin; k <= kmax; ++k) {
        long a = J + 4 * k * n;
        theta.add(make_rational(a * a, 16 * n), Rational(z == 1 ? 1 : sign_pow(k)));
    }
    QSeries prod = theta * euler_inverse(wide);
    QSeries out(cutoff, prod.valid_order() - kEtaShift);
    for (const auto& [e, c] : prod.terms()) out.add(e - kEtaShift, c);
    return out;
}

BiSeries verma_trace_series(ModelKind kind, int p, int pp, int d, const Rational& e, int eps, const Rational& cutoff)
{
    const KacData kac{p, pp};
    const Rational wide = cutoff + kEtaShift;
    const double y = std::sqrt(4.0 * p * pp * wide.get_d()) + 1.0;
    const double reach = (y + 0.5 * p * d) / pp;
    const int step = kind == ModelKind::Dense ? 1 : 2;
    const long lo = static_cast<long>(std::floor((e.get_d() - reach) / step)) - 1;
    const long hi = static_cast<long>(std::ceil((e.get_d() + reach) / step)) + 1;
    const Rational half_d = make_rational(d, 2);
    BiSeries lattice(wide);
    for (long l = lo; l <= hi; ++l) {
        Rational r = e - Rational(step * l);
        int sign = (kind == ModelKind::Dense && eps == 1) ? sign_pow(l) : 1;
        lattice.add(kac.reduced_weight(r, half_d) + kEtaShift, kac.reduced_weight(r, -half_d) + kEtaShift,
                    Rational(sign));
    }
    return over_eta_eta(lattice, cutoff);
}

BiSeries Z_hv_direct(int p, int pp, int h, int v, const Rational& cutoff)
{
    const Rational wide = cutoff + kEtaShift;
    const long n16 = 16L * p * pp;
    const long x = isqrt_ceil(wide * Rational(n16));
    BiSeries lattice(wide);
    for (long r = -x / (2 * pp) - 1; r <= x / (2 * pp) + 1; ++r) {
        for (long S = -x / p - 1; S <= x / p + 1; ++S) {
            if (((S - h) % 2 + 2) % 2 != 0) continue;
            long a = 2L * pp * r - static_cast<long>(p) * S;
            long b = 2L * pp * r + static_cast<long>(p) * S;
            lattice.add(make_rational(a * a, n16), make_rational(b * b, n16), Rational(v == 1 ? sign_pow(r) : 1));
        }
    }
    return over_eta_eta(lattice, cutoff);
}

BiSeries Z_rs(int p, int pp, int h, int v, long r, long s, const Rational& cutoff)
{
    const long n = static_cast<long>(p) * pp;
    const int z = (p * v) % 2 == 0 ? 1 : -1;
    const long J = 2L * pp * r - static_cast<long>(p) * (2 * s + h);
    const long Jb = 2L * pp * r + static_cast<long>(p) * (2 * s + h);
    return outer(u1_char(n, J, z, cutoff), u1_char(n, Jb, z, cutoff));
}

BiSeries Z_hv_u1(int p, int pp, int h, int v, const Rational& cutoff)
{
    const long n = static_cast<long>(p) * pp;
    const int z = (p * v) % 2 == 0 ? 1 : -1;
    CharCache kappa(n, z, cutoff);
    BiSeries total(cutoff);
    for (long r = 0; r < p; ++r) {
        for (long s = 0; s < 2L * pp; ++s) {
            const long J = 2L * pp * r - static_cast<long>(p) * (2 * s + h);
            const long Jb = 2L * pp * r + static_cast<long>(p) * (2 * s + h);
            BiSeries term = outer(kappa(J), kappa(Jb));
            if (v == 1 && r % 2 == 1) term *= Rational(-1);
            total += term;
        }
    }
    return total;
}

BiSeries Z_hv_bezout(int p, int pp, int h, int v, const Rational& cutoff)
{
    const BezoutContext ctx = BezoutContext::make(p, pp, h, v);
    const BezoutPairTable table = bezout_table(ctx);
    CharCache kappa(ctx.n, ctx.z(), cutoff);
    BiSeries total(cutoff);
    for (const auto& e : table.entries()) {
        BiSeries term = outer(kappa(e.J), kappa(e.Jbar));
        if (v == 1 && e.rho % 2 == 1) term *= Rational(-1);
        total += term;
    }
    total *= make_rational(1, ctx.kappa);
    return total;
}

CosBiSeries full_Z_series(int p, int pp, const Rational& e0, const Rational& cutoff)
{
    const KacData kac{p, pp};
    const Rational wide = cutoff + kEtaShift;
    const double y = std::sqrt(4.0 * p * pp * wide.get_d()) + 1.0;
    CosBiSeries lattice(wide);

    auto ell_range = [&](const Rational& base, long d) {
        const double reach = (y + 0.5 * p * d) / pp;
        return std::pair<long, long>(static_cast<long>(std::floor((base.get_d() - reach) / 2.0)) - 1,
                                     static_cast<long>(std::ceil((base.get_d() + reach) / 2.0)) + 1);
    };

    auto [l0, l1] = ell_range(e0, 0);
    for (long l = l0; l <= l1; ++l) {
        Rational w = kac.reduced_weight(e0 - Rational(2 * l), 0) + kEtaShift;
        lattice.add(w, w, CosPoly(Rational(1)));
    }
    const long dmax = static_cast<long>(2.0 * y / p) + 1;
    for (long d = 1; d <= dmax; ++d) {
        const Rational half_d = make_rational(d, 2);
        for (long m = 0; m < d; ++m) {
            CosPoly weight = gamma_dm_formal(d, m) * Rational(2);
            if (weight.is_zero()) continue;
            const Rational base = make_rational(2 * m, d);
            auto [a0, a1] = ell_range(base, d);
            for (long l = a0; l <= a1; ++l) {
                Rational r = base - Rational(2 * l);
                lattice.add(kac.reduced_weight(r, half_d) + kEtaShift, kac.reduced_weight(r, -half_d) + kEtaShift,
                            weight);
            }
        }
    }
    return over_eta_eta(lattice, cutoff);
}

CosBiSeries on_series(const Rational& g, const Rational& e0, const Rational& cutoff)
{
    const Rational wide = cutoff + kEtaShift;
    auto h = [&g](const Rational& r, const Rational& s) -> Rational {
        Rational a = r + g * s;
        return a * a / (Rational(4) * g);
    };
    auto hbar = [&g](const Rational& r, const Rational& s) -> Rational {
        Rational a = r - g * s;
        return a * a / (Rational(4) * g);
    };
    const double y = std::sqrt(4.0 * g.get_d() * wide.get_d()) + 1.0;
    CosBiSeries lattice(wide);

    const long pmax = static_cast<long>(y / 2.0 + std::abs(e0.get_d())) + 1;
    for (long P = -pmax; P <= pmax; ++P) {
        Rational w = h(e0 + Rational(2 * P), 0);
        lattice.add(w, w, CosPoly(Rational(1)));
    }
    const long Mmax = static_cast<long>(2.0 * y / g.get_d()) + 1;
    for (long M = 1; M <= Mmax; ++M) {
        const Rational half_M = make_rational(M, 2);
        for (long N : divisors(M)) {
            CosPoly weight = lambda_formal(M, N);
            if (weight.is_zero()) continue;
            const long bound = static_cast<long>(N * y / 2.0) + 1;
            for (long P = -bound; P <= bound; ++P) {
                if (gcd_conv(P, N) != 1) continue;
                Rational r = make_rational(2 * P, N);
                lattice.add(h(r, half_M), hbar(r, half_M), weight);
            }
        }
    }
    return over_eta_eta(lattice, cutoff);
}

std::complex<double> eta_numeric(const TauPoint& tau)
{
    const std::complex<double> i(0, 1);
    const std::complex<double> q = tau.q();
    std::complex<double> prod = std::exp(2.0 * std::numbers::pi * i * tau.tau / 24.0);
    std::complex<double> qn = q;
    for (int k = 1; k < 100000 && std::abs(qn) > 1e-18; ++k) {
        prod *= 1.0 - qn;
        qn *= q;
    }
    return prod;
}

namespace {

double gaussian(double g, long m, long mp, const TauPoint& tau)
{
    const double ti = tau.tau.imag();
    const double dist = std::norm(static_cast<double>(m) * tau.tau - static_cast<double>(mp));
    return std::sqrt(g / ti) * std::exp(-std::numbers::pi * g * dist / ti);
}

}  // namespace

double Zmm(double g, long m, long mp, const TauPoint& tau)
{
    return gaussian(g, m, mp, tau) / std::norm(eta_numeric(tau));
}

double conformal_Z_numeric(double g, double alpha, int h, int v, const TauPoint& tau, int D)
{
    const double x = alpha / 2.0;
    double sum = 0.0;
    for (long d = -D; d <= D; ++d) {
        if (((d - h) % 2 + 2) % 2 != 0) continue;
        for (long j = -D; j <= D; ++j) {
            if (((j - v) % 2 + 2) % 2 != 0) continue;
            sum += 2.0 * chebyshev_T(gcd_conv(d, j), x) * gaussian(g / 4.0, d, j, tau);
        }
    }
    return sum / std::norm(eta_numeric(tau));
}

double coulomb_Z_hv(double g, int h, int v, const TauPoint& tau)
{
    const std::complex<double> i(0, 1);
    const double ti = tau.tau.imag();
    const double sg = std::sqrt(g);
    const long rmax = static_cast<long>(std::sqrt(45.0 * g / (std::numbers::pi * ti))) + 2;
    const long smax = static_cast<long>(2.0 * std::sqrt(45.0 / (g * std::numbers::pi * ti))) + 3;
    std::complex<double> sum = 0.0;
    for (long r = -rmax; r <= rmax; ++r) {
        for (long S = -smax; S <= smax; ++S) {
            if (((S - h) % 2 + 2) % 2 != 0) continue;
            const double s = 0.5 * static_cast<double>(S);
            const double a = (r / sg - s * sg) * (r / sg - s * sg) / 4.0;
            const double b = (r / sg + s * sg) * (r / sg + s * sg) / 4.0;
            std::complex<double> term =
                std::exp(2.0 * std::numbers::pi * i * (tau.tau * a - std::conj(tau.tau) * b));
            sum += (v == 1 && r % 2 != 0) ? -term : term;
        }
    }
    return sum.real() / std::norm(eta_numeric(tau));
}

std::complex<double> u1_char_numeric(long n, long J, int z, const TauPoint& tau)
{
    const std::complex<double> i(0, 1);
    std::complex<double> theta = 0.0;
    const double ti = tau.tau.imag();
    const long kmax = static_cast<long>(std::sqrt(45.0 * 16.0 * n / (2.0 * std::numbers::pi * ti)) / (4.0 * n)) +
                      std::abs(J) / (4 * n) + 2;
    for (long k = -kmax; k <= kmax; ++k) {
        const double a = static_cast<double>(J + 4 * k * n);
        std::complex<double> term = std::exp(2.0 * std::numbers::pi * i * tau.tau * (a * a / (16.0 * n)));
        theta += (z == -1 && k % 2 != 0) ? -term : term;
    }
    return theta / eta_numeric(tau);
}

std::vector<NamedCheck> character_identities(long n, const Rational& cutoff)
{
    bool shift_z = true, reflect_z = true, period_plus = true, period_minus = true;
    bool fold_plus = true, fold_minus = true, fold4_minus = true, inter_plus = true, inter_minus = true;
    CharCache plus(n, 1, cutoff), minus(n, -1, cutoff), big(4 * n, 1, cutoff);
    auto neg = [](QSeries s) { return s * Rational(-1); };
    for (long J = 0; J < 8 * n; ++J) {
        const QSeries& kp = plus(J);
        const QSeries& km = minus(J);
        if (!(plus(J + 4 * n) == kp) || !(minus(J + 4 * n) == neg(km))) shift_z = false;
        if (!(plus(4 * n - J) == kp) || !(minus(4 * n - J) == neg(km))) reflect_z = false;
        if (!(plus(J + 4 * n) == kp)) period_plus = false;
        if (!(minus(J + 8 * n) == km)) period_minus = false;
        if (!(plus(4 * n - J) == kp)) fold_plus = false;
        if (!(minus(4 * n - J) == neg(km))) fold_minus = false;
        if (!(minus(8 * n - J) == km)) fold4_minus = false;
        if (!(big(2 * J) + big(8 * n - 2 * J) == kp)) inter_plus = false;
        if (!(big(2 * J) - big(8 * n - 2 * J) == km)) inter_minus = false;
    }
    return {{"kappa_{j+2n}(z) = z^-1 kappa_j(z)", shift_z},
            {"kappa_{2n-j}(z) = z^-1 kappa_j(1/z)", reflect_z},
            {"kappa_{j+2n}(1) = kappa_j(1)", period_plus},
            {"kappa_{j+4n}(-1) = kappa_j(-1)", period_minus},
            {"kappa_{2n-j}(1) = kappa_j(1)", fold_plus},
            {"kappa_{2n-j}(-1) = -kappa_j(-1)", fold_minus},
            {"kappa_{4n-j}(-1) = kappa_j(-1)", fold4_minus},
            {"kappa_n(-1) = 0", minus(2 * n).is_zero()},
            {"kappa_j(1) = kappa^{4n}_{2j} + kappa^{4n}_{4n-2j}", inter_plus},
            {"kappa_j(-1) = kappa^{4n}_{2j} - kappa^{4n}_{4n-2j}", inter_minus}};
}

ModularReport modular_rep_check()
{
    ModularReport rep;
    Eigen::Matrix4i S = Eigen::Matrix4i::Zero(), T = Eigen::Matrix4i::Zero();
    const Eigen::Matrix4i I = Eigen::Matrix4i::Identity();
    S(0, 0) = S(1, 2) = S(2, 1) = S(3, 3) = 1;
    T(0, 0) = T(1, 1) = T(2, 3) = T(3, 2) = 1;
    rep.S_squared = S * S == I;
    Eigen::Matrix4i ST = S * T;
    rep.ST_cubed = ST * ST * ST == I;
    rep.T_squared = T * T == I;
    rep.S_swaps_01_10 = S.col(1) == I.col(2) && S.col(2) == I.col(1);
    rep.T_swaps_10_11 = T.col(2) == I.col(3) && T.col(3) == I.col(2);

    rep.T_sign = true;
    for (long n : {2L, 3L, 6L, 12L, 15L, 20L}) {
        const long N = 4 * n;
        auto weight = [N](long j) {
            Rational a = make_rational(j * j, 4 * N);
            Rational b = make_rational((2 * N - j) * (2 * N - j), 4 * N);
            return a < b ? a : b;
        };
        for (long j = 0; j <= N; ++j) {
            Rational diff = weight(j) - weight(N - j) - make_rational(j, 2);
            if (!is_integer(diff)) rep.T_sign = false;
        }
    }

    double worst = 0.0;
    const std::complex<double> i(0, 1);
    for (std::complex<double> t : {std::complex<double>(0.1, 0.9), std::complex<double>(-0.4, 1.3),
                                   std::complex<double>(0.5, 0.5)}) {
        const TauPoint tau(t);
        const TauPoint inv = tau.inverted();
        for (long n : {2L, 3L, 6L}) {
            for (long j = 0; j < 2 * n; ++j) {
                std::complex<double> lhs = u1_char_numeric(n, 2 * j, 1, inv);
                std::complex<double> rhs = 0.0;
                for (long k = 0; k < 2 * n; ++k)
                    rhs += std::exp(-std::numbers::pi * i * static_cast<double>(j * k) / static_cast<double>(n)) *
                           u1_char_numeric(n, 2 * k, 1, tau);
                rhs /= std::sqrt(2.0 * n);
                worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
            }
        }
    }
    rep.character_S_error = worst;
    rep.character_S = worst < 1e-8;
    return rep;
}

}  // namespace torusloops
