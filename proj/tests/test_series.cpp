#include "torusloops/series.hpp"

#include <doctest.h>

using namespace torusloops;

TEST_CASE("rationals are canonical")
{
    CHECK(make_rational(2, 4) == make_rational(1, 2));
    CHECK(to_string(make_rational(-6, 4)) == "-3/2");
    CHECK(to_short_string(Rational(5)) == "5");
    CHECK(parse_rational("10/4") == make_rational(5, 2));
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK(floor_long(make_rational(-7, 2)) == -4);
    CHECK(ceil_long(make_rational(-7, 2)) == -3);
}

TEST_CASE("euler_inverse gives the partition numbers")
{
    const long p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    const QSeries e = euler_inverse(Rational(12));
    for (long k = 0; k <= 12; ++k) CHECK(e.coeff(Rational(k)) == p[k]);
}

TEST_CASE("euler product and its inverse cancel")
{
    const Rational cut(15);
    const QSeries one = euler_product(cut) * euler_inverse(cut);
    CHECK(one.terms().size() == 1);
    CHECK(one.coeff(Rational(0)) == 1);
}

TEST_CASE("pentagonal numbers in (q)_infty")
{
    const QSeries e = euler_product(Rational(15));
    for (long k : {0, 5, 7}) CHECK(e.coeff(Rational(k)) == 1);
    for (long k : {1, 2, 12, 15}) CHECK(e.coeff(Rational(k)) == -1);
    for (long k : {3, 4, 6, 8, 9, 10, 11, 13, 14}) CHECK(e.coeff(Rational(k)) == 0);
}

TEST_CASE("dedekind eta starts at q^{1/24}")
{
    const QSeries eta = dedekind_eta(Rational(3));
    CHECK(eta.min_exponent() == make_rational(1, 24));
    CHECK(eta.coeff(make_rational(25, 24)) == -1);
}

TEST_CASE("truncation drops terms above the cutoff")
{
    QSeries s(Rational(2));
    s.add(Rational(1), Rational(3));
    s.add(Rational(3), Rational(1));
    CHECK(s.terms().size() == 1);
    const QSeries sq = s * s;
    CHECK(sq.coeff(Rational(2)) == 9);
}

TEST_CASE("bi-series products and swaps")
{
    const Rational cut(4);
    QSeries f(cut), g(cut);
    f.add(Rational(0), Rational(1));
    f.add(Rational(1), Rational(2));
    g.add(make_rational(1, 2), Rational(3));
    const BiSeries fg = outer(f, g);
    CHECK(fg.coeff(Rational(1), make_rational(1, 2)) == 6);
    CHECK(fg.swapped().coeff(make_rational(1, 2), Rational(1)) == 6);
    const BiSeries sq = series_mul(fg, fg);
    CHECK(sq.coeff(Rational(2), Rational(1)) == 36);
    CHECK(sq.coeff(Rational(1), Rational(1)) == 36);
}

TEST_CASE("cos-polynomial coefficients")
{
    CosPoly a = CosPoly::cos_of(2, 3) + CosPoly::cos_of(-2, 1);
    CHECK(a.terms().at(2) == 4);
    CHECK((a - a).is_zero());
    CosBiSeries s(Rational(1));
    s.add(Rational(0), Rational(0), a);
    s.add(Rational(0), Rational(0), -a);
    CHECK(s.is_zero());
}

TEST_CASE("json round trip of a bi-series")
{
    const Rational cut(3);
    const BiSeries s = outer(euler_inverse(cut), euler_inverse(cut));
    CHECK(bi_series_from_json(to_json(s), cut) == s);
}
