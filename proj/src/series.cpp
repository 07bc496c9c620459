#include "torusloops/series.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace torusloops {

Rational parse_rational(const std::string& text)
{
    Rational r;
    if (r.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
}

double CosPoly::evaluate(double gamma) const
{
    double s = 0.0;
    for (const auto& [k, c] : terms_) s += c.get_d() * std::cos(static_cast<double>(k) * gamma);
    return s;
}

std::string CosPoly::str() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << to_string(c);
        if (k != 0) os << "*cos(" << k << "g)";
    }
    return os.str();
}

QSeries QSeries::monomial(const Rational& exponent, const Rational& coeff, const Rational& cutoff)
{
    QSeries s(cutoff);
    s.add(exponent, coeff);
    return s;
}

void QSeries::add(const Rational& exponent, const Rational& coeff)
{
    if (exponent > cutoff_ || coeff == 0) return;
    auto [it, fresh] = terms_.try_emplace(exponent, coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational QSeries::coeff(const Rational& exponent) const
{
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<Rational> QSeries::min_exponent() const
{
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

QSeries QSeries::shifted(const Rational& by) const
{
    Rational v = valid_ + by;
    QSeries r(cutoff_, std::min(v, cutoff_));
    for (const auto& [e, c] : terms_) r.add(e + by, c);
    return r;
}

QSeries QSeries::truncated(const Rational& order) const
{
    QSeries r(std::min(order, cutoff_), std::min(order, valid_));
    for (const auto& [e, c] : terms_) r.add(e, c);
    return r;
}

QSeries& QSeries::operator+=(const QSeries& o)
{
    if (cutoff_ != o.cutoff_) throw std::invalid_argument("series cutoff mismatch");
    for (const auto& [e, c] : o.terms_) add(e, c);
    valid_ = std::min(valid_, o.valid_);
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o)
{
    if (cutoff_ != o.cutoff_) throw std::invalid_argument("series cutoff mismatch");
    for (const auto& [e, c] : o.terms_) add(e, -c);
    valid_ = std::min(valid_, o.valid_);
    return *this;
}

QSeries& QSeries::operator*=(const Rational& s)
{
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

QSeries series_mul(const QSeries& a, const QSeries& b)
{
    if (a.cutoff() != b.cutoff()) throw std::invalid_argument("series cutoff mismatch");
    Rational min_a = a.min_exponent().value_or(a.valid_order());
    Rational min_b = b.min_exponent().value_or(b.valid_order());
    Rational va = a.valid_order() + min_b;
    Rational vb = b.valid_order() + min_a;
    QSeries r(a.cutoff(), std::min(va, vb));
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Rational e = ea + eb;
            if (e > a.cutoff()) break;
            r.add(e, ca * cb);
        }
    }
    return r;
}

bool agree(const QSeries& a, const QSeries& b)
{
    Rational order = std::min(a.valid_order(), b.valid_order());
    return a.truncated(order).terms() == b.truncated(order).terms();
}

QSeries euler_inverse(const Rational& cutoff)
{
    if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
    long top = floor_long(cutoff);
    std::vector<mpz_class> p(static_cast<std::size_t>(top) + 1, 0);
    p[0] = 1;
    for (long part = 1; part <= top; ++part)
        for (long k = part; k <= top; ++k) p[k] += p[k - part];
    QSeries s(cutoff);
    for (long k = 0; k <= top; ++k) s.add(Rational(k), Rational(p[k]));
    return s;
}

QSeries euler_product(const Rational& cutoff)
{
    if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
    long top = floor_long(cutoff);
    std::vector<mpz_class> c(static_cast<std::size_t>(top) + 1, 0);
    c[0] = 1;
    for (long f = 1; f <= top; ++f)
        for (long k = top; k >= f; --k) c[k] -= c[k - f];
    QSeries s(cutoff);
    for (long k = 0; k <= top; ++k) s.add(Rational(k), Rational(c[k]));
    return s;
}

QSeries dedekind_eta(const Rational& cutoff)
{
    const Rational shift(1, 24);
    if (cutoff < shift) throw std::invalid_argument("cutoff must be at least 1/24");
    Rational inner_cut = cutoff - shift;
    QSeries inner = euler_product(inner_cut);
    QSeries s(cutoff);
    for (const auto& [e, c] : inner.terms()) s.add(e + shift, c);
    return s;
}

BiSeries outer(const QSeries& f, const QSeries& g)
{
    if (f.cutoff() != g.cutoff()) throw std::invalid_argument("series cutoff mismatch");
    BiSeries r(f.cutoff(), std::min(f.valid_order(), g.valid_order()));
    for (const auto& [ef, cf] : f.terms())
        for (const auto& [eg, cg] : g.terms()) r.add(ef, eg, cf * cg);
    return r;
}

nlohmann::json to_json(const QSeries& s)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [e, c] : s.terms()) out.push_back({{"qexp", to_string(e)}, {"coeff", to_string(c)}});
    return out;
}

BiSeries bi_series_from_json(const nlohmann::json& j, const Rational& cutoff)
{
    BiSeries s(cutoff);
    for (const auto& t : j)
        s.add(parse_rational(t.at("qexp").get<std::string>()), parse_rational(t.at("qbarexp").get<std::string>()),
              parse_rational(t.at("coeff").get<std::string>()));
    return s;
}

}  // namespace torusloops
