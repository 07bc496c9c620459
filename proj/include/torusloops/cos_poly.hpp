#pragma once

#include "torusloops/rational.hpp"

#include <map>
#include <string>

namespace torusloops {

/// Formal combination sum_k c_k cos(k*gamma) with rational c_k and k >= 0.
class CosPoly {
public:
    using Terms = std::map<long, Rational>;

    CosPoly() = default;
    explicit CosPoly(const Rational& constant) { add(0, constant); }

    static CosPoly cos_of(long k, const Rational& c = 1)
    {
        CosPoly r;
        r.add(k, c);
        return r;
    }

    void add(long k, const Rational& c)
    {
        if (k < 0) k = -k;
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    double evaluate(double gamma) const;
    std::string str() const;

    CosPoly& operator+=(const CosPoly& o)
    {
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    CosPoly& operator-=(const CosPoly& o)
    {
        for (const auto& [k, c] : o.terms_) add(k, -c);
        return *this;
    }
    CosPoly& operator*=(const Rational& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }

    friend CosPoly operator+(CosPoly a, const CosPoly& b) { return a += b; }
    friend CosPoly operator-(CosPoly a, const CosPoly& b) { return a -= b; }
    friend CosPoly operator*(CosPoly a, const Rational& s) { return a *= s; }
    friend CosPoly operator*(const Rational& s, CosPoly a) { return a *= s; }
    friend CosPoly operator-(CosPoly a) { return a *= Rational(-1); }
    friend bool operator==(const CosPoly& a, const CosPoly& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

}  // namespace torusloops
