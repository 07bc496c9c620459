#include "torusloops/cft.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace torusloops;

namespace {

BiSeries signed_blocks(int p, int pp, int h, int v, long s_count, const Rational& cut)
{
    BiSeries total(cut);
    for (long r = 0; r < p; ++r)
        for (long s = 0; s < s_count; ++s) total += Z_rs(p, pp, h, v, r, s, cut) * Rational(v == 1 && r % 2 ? -1 : 1);
    return total;
}

}  // namespace

TEST_CASE("central charges and weights")
{
    CHECK(KacData{2, 3}.c() == 0);
    CHECK(KacData{3, 4}.c() == make_rational(1, 2));
    CHECK(KacData{1, 2}.c() == -2);
    CHECK(KacData{3, 5}.delta(1, 1) == 0);
    const KacData k{3, 4};
    for (long r = -3; r <= 3; ++r)
        for (long s = -3; s <= 3; ++s)
            CHECK(k.reduced_weight(r, make_rational(s, 2)) == k.delta(r, make_rational(s, 2)) - k.c() / 24);
}

TEST_CASE("tau points")
{
    CHECK_THROWS_AS(TauPoint({0.3, 0.0}), std::invalid_argument);
    const TauPoint t = TauPoint::from_lattice(ModelSpec::isotropic(ModelKind::Dense, 2, 3), 1.0);
    CHECK(std::abs(t.tau - std::complex<double>(0, 1)) < 1e-15);
    // eta(i) = Gamma(1/4) / (2 pi^{3/4}).
    CHECK(std::abs(eta_numeric(t)) == doctest::Approx(std::tgamma(0.25) / (2 * std::pow(std::numbers::pi, 0.75))));
    CHECK(std::abs(t.inverted().tau - t.tau) < 1e-15);
}

TEST_CASE("level-1 character by hand")
{
    // (1 + 2q + 2q^4)(1 + q + 2q^2 + 3q^3 + 5q^4) q^{-1/24}
    const QSeries k = u1_char(1, 0, 1, Rational(5));
    const long expected[] = {1, 3, 4, 7, 13};
    for (long m = 0; m <= 4; ++m) CHECK(k.coeff(Rational(m) - make_rational(1, 24)) == expected[m]);
}

TEST_CASE("character identities")
{
    for (long n : {2L, 6L})
        for (const auto& c : character_identities(n, Rational(6))) {
            INFO(c.name);
            CHECK(c.pass);
        }
    CHECK(u1_char(6, 12, -1, Rational(6)).is_zero());
}

TEST_CASE("three forms of the sector partition functions")
{
    const Rational cut(6);
    for (int h = 0; h < 2; ++h)
        for (int v = 0; v < 2; ++v) {
            const BiSeries a = Z_hv_direct(2, 3, h, v, cut);
            CHECK(a == Z_hv_u1(2, 3, h, v, cut));
            CHECK(a == Z_hv_bezout(2, 3, h, v, cut));
            CHECK(a == signed_blocks(2, 3, h, v, 6, cut));
        }
    const BiSeries z = Z_hv_direct(1, 2, 0, 0, cut);
    const Rational lead = -make_rational(1, 24);
    CHECK(z.min_exponent() == lead);
    CHECK(z.coeff(lead, lead) == 1);
}

TEST_CASE("block symmetries and the half-range sum")
{
    const Rational cut(4);
    for (auto [p, pp] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}})
        for (int h = 0; h < 2; ++h)
            for (int v = 0; v < 2; ++v) {
                for (long r = 0; r < p; ++r)
                    for (long s = 0; s < 2 * pp; ++s) {
                        const BiSeries b = Z_rs(p, pp, h, v, r, s, cut);
                        CHECK(b == Z_rs(p, pp, h, v, r + 2 * p, s, cut));
                        CHECK(b == Z_rs(p, pp, h, v, r, s + 2 * pp, cut));
                        CHECK(b == Z_rs(p, pp, h, v, -r, -s - h, cut));
                        CHECK(b.swapped() == Z_rs(p, pp, h, v, r, 2 * pp - s - h, cut));
                    }
                CHECK(signed_blocks(p, pp, h, v, 2 * pp, cut) * Rational(2) == signed_blocks(p, pp, h, v, 4 * pp, cut));
            }
}

TEST_CASE("full alpha = 2 partition function in characters")
{
    const Rational cut(5);
    for (auto [p, pp] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {4, 5}}) {
        const long n = static_cast<long>(p) * pp;
        BiSeries sectors(cut), chars(cut), even(cut);
        for (int h = 0; h < 2; ++h)
            for (int v = 0; v < 2; ++v) sectors += Z_hv_direct(p, pp, h, v, cut);
        for (int v = 0; v < 2; ++v)
            for (long r = 0; r < p; ++r)
                for (long S = 0; S < 4 * pp; ++S) {
                    const int z = (p * v) % 2 == 0 ? 1 : -1;
                    const BiSeries t = outer(u1_char(n, 2 * pp * r - p * S, z, cut), u1_char(n, 2 * pp * r + p * S, z, cut));
                    chars += t * Rational(v == 1 && r % 2 ? -1 : 1);
                    if (p % 2 == 0 && v == 0 && r % 2 == 0) even += t * Rational(2);
                }
        CHECK(sectors == chars);
        if (p % 2 == 0) CHECK(sectors == even);
    }
}

TEST_CASE("full alpha = 2 dilute function is twice a Coulomb function")
{
    const TauPoint tau({0.13, 0.8});
    for (auto [p, pp] : std::vector<std::pair<int, int>>{{2, 3}, {3, 5}}) {
        double sum = 0.0;
        for (int h = 0; h < 2; ++h)
            for (int v = 0; v < 2; ++v) sum += coulomb_Z_hv(static_cast<double>(p) / pp, h, v, tau);
        CHECK(sum == doctest::Approx(2 * coulomb_Z_hv(p / (4.0 * pp), 0, 0, tau)).epsilon(1e-10));
    }
}

TEST_CASE("reduced forms")
{
    CHECK(form_text(reduced_form(1, 2, 0, 0)) == "|k[2,0](1,q)|^2 + 2 |k[2,1](1,q)|^2 + |k[2,2](1,q)|^2");
    CHECK(form_text(reduced_form(1, 2, 1, 0)) == "2 |k[2,1/2](1,q)|^2 + 2 |k[2,3/2](1,q)|^2");
    const auto z2311 = reduced_form(2, 3, 1, 1);
    CHECK(z2311.size() == 7);
    CHECK(form_text(z2311).rfind("-k[6,0](1,q) k[6,6](1,qbar)", 0) == 0);
    for (const auto& t : reduced_form(3, 4, 1, 0)) CHECK(t.coeff > 0);
    CHECK(reduced_form(3, 4, 1, 1).size() == 12);
    const Rational cut(6);
    for (int h = 0; h < 2; ++h)
        for (int v = 0; v < 2; ++v)
            CHECK(expand_form(reduced_form(3, 5, h, v), cut) == Z_hv_direct(3, 5, h, v, cut));
}

TEST_CASE("kappa factor")
{
    for (int p : {1, 2, 3})
        for (int v = 0; v < 2; ++v) CHECK(BezoutContext::make(p, p + 1, 0, v).kappa == ((p * v) % 2 ? 2 : 1));
}

TEST_CASE("Verma trace series")
{
    const Rational cut(4);
    const KacData k{1, 2};
    const BiSeries t = verma_trace_series(ModelKind::Dense, 1, 2, 0, make_rational(1, 2), 0, cut);
    const Rational w = k.reduced_weight(make_rational(1, 2), 0);
    CHECK(t.min_exponent() == w);
    CHECK(t.coeff(w, w) == 2);

    const Rational e = make_rational(1, 3);
    for (int d : {0, 1, 2}) {
        CHECK(verma_trace_series(ModelKind::Dilute, 2, 3, d, e, 0, cut) ==
              verma_trace_series(ModelKind::Dilute, 2, 3, d, e + 2, 0, cut));
        for (int eps : {0, 1})
            CHECK(verma_trace_series(ModelKind::Dense, 2, 3, d, e + 1, eps, cut) ==
                  verma_trace_series(ModelKind::Dense, 2, 3, d, e, eps, cut) * Rational(eps ? -1 : 1));
        CHECK(verma_trace_series(ModelKind::Dense, 2, 3, d, e, 1, cut) ==
              verma_trace_series(ModelKind::Dense, 4, 6, d, e, 1, cut));
    }
}

TEST_CASE("full partition function against the O(n) form")
{
    const Rational cut(5);
    for (const Rational& e0 : {Rational(0), make_rational(1, 3)})
        CHECK(full_Z_series(2, 3, e0, cut) == on_series(make_rational(2, 3), e0, cut).swapped());
}

TEST_CASE("Gaussian blocks")
{
    const TauPoint tau({-0.31, 0.77});
    const double g = 2.0 / 3.0;
    for (long d = -3; d <= 3; ++d)
        for (long j = -3; j <= 3; ++j) {
            const double a = Zmm(g, d, j, tau.shifted());
            CHECK(std::abs(a - Zmm(g, d, j - d, tau)) < 1e-12 * std::max(1.0, a));
            const double b = Zmm(g, d, j, tau.inverted());
            CHECK(std::abs(b - Zmm(g, j, -d, tau)) < 1e-12 * std::max(1.0, b));
        }
    CHECK(Zmm(g, 0, 0, tau) == doctest::Approx(std::sqrt(g / 0.77) / std::norm(eta_numeric(tau))));
}

TEST_CASE("conformal sectors at alpha = 2 are Coulomb functions")
{
    const TauPoint tau({0.1, 0.9});
    for (auto [p, pp] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 5}})
        for (int h = 0; h < 2; ++h)
            for (int v = 0; v < 2; ++v) {
                const double g = static_cast<double>(p) / pp;
                const double a = conformal_Z_numeric(g, 2.0, h, v, tau);
                CHECK(std::abs(a - coulomb_Z_hv(g, h, v, tau)) < 1e-10 * std::abs(a));
            }
}

TEST_CASE("modular representation")
{
    const ModularReport r = modular_rep_check();
    CHECK(r.S_squared);
    CHECK(r.ST_cubed);
    CHECK(r.T_squared);
    CHECK(r.S_swaps_01_10);
    CHECK(r.T_swaps_10_11);
    CHECK(r.T_sign);
    CHECK(r.character_S_error < 1e-10);
}
