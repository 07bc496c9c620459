#pragma once

#include "torusloops/cos_poly.hpp"
#include "torusloops/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace torusloops {

/**
 * Truncated power series in q with rational exponents.
 *
 * Terms with exponent above cutoff() are never stored. Every exponent up to
 * valid_order() is exact; between valid_order() and cutoff() coefficients
 * may be incomplete.
 */
class QSeries {
public:
    using Terms = std::map<Rational, Rational>;

    explicit QSeries(Rational cutoff) : cutoff_(cutoff), valid_(std::move(cutoff)) {}
    QSeries(Rational cutoff, Rational valid)
        : cutoff_(std::move(cutoff)), valid_(std::min(valid, cutoff_)) {}

    static QSeries monomial(const Rational& exponent, const Rational& coeff, const Rational& cutoff);

    const Rational& cutoff() const { return cutoff_; }
    const Rational& valid_order() const { return valid_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Rational& exponent, const Rational& coeff);
    Rational coeff(const Rational& exponent) const;
    std::optional<Rational> min_exponent() const;

    /// Multiply by q^by; the valid order moves with the shift.
    QSeries shifted(const Rational& by) const;
    QSeries truncated(const Rational& order) const;

    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    QSeries& operator*=(const Rational& s);

    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(QSeries a, const Rational& s) { return a *= s; }
    friend QSeries operator*(const Rational& s, QSeries a) { return a *= s; }
    friend bool operator==(const QSeries& a, const QSeries& b)
    {
        return a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
    }

private:
    Rational cutoff_;
    Rational valid_;
    Terms terms_;
};

QSeries series_mul(const QSeries& a, const QSeries& b);
inline QSeries operator*(const QSeries& a, const QSeries& b) { return series_mul(a, b); }

/// Term-by-term equality restricted to exponents up to the smaller valid order.
bool agree(const QSeries& a, const QSeries& b);

/// 1/(q)_infty: partition numbers, exact through cutoff.
QSeries euler_inverse(const Rational& cutoff);
/// (q)_infty, exact through cutoff.
QSeries euler_product(const Rational& cutoff);
/// q^{1/24} (q)_infty, exact through cutoff.
QSeries dedekind_eta(const Rational& cutoff);

inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const CosPoly& c) { return c.is_zero(); }
inline std::string coeff_str(const Rational& c) { return to_string(c); }
inline std::string coeff_str(const CosPoly& c) { return c.str(); }

/**
 * Truncated series in (q, qbar) with rational exponents.
 *
 * The cutoff applies to each exponent separately. The coefficient type is
 * Rational for exact partition functions and CosPoly when coefficients are
 * formal trigonometric polynomials in gamma.
 */
template <class Coeff>
class BasicBiSeries {
public:
    using Exponents = std::pair<Rational, Rational>;
    using Terms = std::map<Exponents, Coeff>;

    explicit BasicBiSeries(Rational cutoff) : cutoff_(cutoff), valid_(std::move(cutoff)) {}
    BasicBiSeries(Rational cutoff, Rational valid)
        : cutoff_(std::move(cutoff)), valid_(std::min(valid, cutoff_)) {}

    const Rational& cutoff() const { return cutoff_; }
    const Rational& valid_order() const { return valid_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void set_valid_order(const Rational& v) { valid_ = std::min(v, cutoff_); }

    void add(const Rational& qexp, const Rational& qbarexp, const Coeff& c)
    {
        if (qexp > cutoff_ || qbarexp > cutoff_ || coeff_is_zero(c)) return;
        auto [it, fresh] = terms_.try_emplace(Exponents(qexp, qbarexp), c);
        if (!fresh) {
            it->second += c;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    Coeff coeff(const Rational& qexp, const Rational& qbarexp) const
    {
        auto it = terms_.find(Exponents(qexp, qbarexp));
        return it == terms_.end() ? Coeff() : it->second;
    }

    /// Smallest exponent over both variables, if any term is stored.
    std::optional<Rational> min_exponent() const
    {
        std::optional<Rational> m;
        for (const auto& [e, c] : terms_) {
            const Rational& lo = std::min(e.first, e.second);
            if (!m || lo < *m) m = lo;
        }
        return m;
    }

    /// Exchange the roles of q and qbar.
    BasicBiSeries swapped() const
    {
        BasicBiSeries r(cutoff_, valid_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(Exponents(e.second, e.first), c);
        return r;
    }

    BasicBiSeries truncated(const Rational& order) const
    {
        BasicBiSeries r(std::min(order, cutoff_), std::min(order, valid_));
        for (const auto& [e, c] : terms_)
            if (e.first <= r.cutoff_ && e.second <= r.cutoff_) r.terms_.emplace(e, c);
        return r;
    }

    BasicBiSeries& operator+=(const BasicBiSeries& o)
    {
        require_same_cutoff(o);
        for (const auto& [e, c] : o.terms_) add(e.first, e.second, c);
        valid_ = std::min(valid_, o.valid_);
        return *this;
    }
    BasicBiSeries& operator-=(const BasicBiSeries& o)
    {
        require_same_cutoff(o);
        for (const auto& [e, c] : o.terms_) add(e.first, e.second, c * Rational(-1));
        valid_ = std::min(valid_, o.valid_);
        return *this;
    }
    BasicBiSeries& operator*=(const Rational& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend BasicBiSeries operator+(BasicBiSeries a, const BasicBiSeries& b) { return a += b; }
    friend BasicBiSeries operator-(BasicBiSeries a, const BasicBiSeries& b) { return a -= b; }
    friend BasicBiSeries operator*(BasicBiSeries a, const Rational& s) { return a *= s; }
    friend BasicBiSeries operator*(const Rational& s, BasicBiSeries a) { return a *= s; }
    friend bool operator==(const BasicBiSeries& a, const BasicBiSeries& b)
    {
        return a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const BasicBiSeries& a, const BasicBiSeries& b) { return !(a == b); }

    void require_same_cutoff(const BasicBiSeries& o) const
    {
        if (cutoff_ != o.cutoff_) throw std::invalid_argument("series cutoff mismatch");
    }

private:
    Rational cutoff_;
    Rational valid_;
    Terms terms_;
};

using BiSeries = BasicBiSeries<Rational>;
using CosBiSeries = BasicBiSeries<CosPoly>;

/// f(q) g(qbar); no exponent convolution, so validity is the smaller of the two.
BiSeries outer(const QSeries& f, const QSeries& g);

/// Product with truncation; valid order min(va + min_b, vb + min_a) capped at the cutoff.
template <class Coeff>
BasicBiSeries<Coeff> series_mul(const BasicBiSeries<Coeff>& a, const BiSeries& b)
{
    if (a.cutoff() != b.cutoff()) throw std::invalid_argument("series cutoff mismatch");
    const Rational& cut = a.cutoff();
    Rational min_a = a.min_exponent().value_or(a.valid_order());
    Rational min_b = b.min_exponent().value_or(b.valid_order());
    Rational va = a.valid_order() + min_b;
    Rational vb = b.valid_order() + min_a;
    Rational valid = std::min(va, vb);
    BasicBiSeries<Coeff> r(cut, std::min(valid, cut));
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Rational x = ea.first + eb.first;
            if (x > cut) continue;
            Rational y = ea.second + eb.second;
            if (y > cut) continue;
            r.add(x, y, ca * cb);
        }
    }
    return r;
}

template <class Coeff>
bool agree(const BasicBiSeries<Coeff>& a, const BasicBiSeries<Coeff>& b)
{
    Rational order = std::min(a.valid_order(), b.valid_order());
    return a.truncated(order).terms() == b.truncated(order).terms();
}

/// [{"qexp","qbarexp","coeff"}] sorted by exponents.
template <class Coeff>
nlohmann::json to_json(const BasicBiSeries<Coeff>& s)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [e, c] : s.terms())
        out.push_back({{"qexp", to_string(e.first)}, {"qbarexp", to_string(e.second)}, {"coeff", coeff_str(c)}});
    return out;
}

nlohmann::json to_json(const QSeries& s);
BiSeries bi_series_from_json(const nlohmann::json& j, const Rational& cutoff);

}  // namespace torusloops
