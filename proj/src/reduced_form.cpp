#include "torusloops/cft.hpp"

#include <map>
#include <sstream>
#include <tuple>

namespace torusloops {

std::vector<FormTerm> reduced_form(int p, int pp, int h, int v)
{
    const BezoutContext ctx = BezoutContext::make(p, pp, h, v);
    const BezoutPairTable table = bezout_table(ctx);
    const int z = ctx.z();
    const long n = ctx.n;
    auto fold = [&](long L, int& sign) {
        if (z == 1) {
            L %= 4 * n;
            if (L > 2 * n) L = 4 * n - L;
        } else {
            L %= 8 * n;
            if (L > 4 * n) L = 8 * n - L;
            if (L > 2 * n) {
                L = 4 * n - L;
                sign = -sign;
            }
        }
        return L;
    };
    std::map<std::pair<long, long>, Rational> acc;
    for (const auto& e : table.entries()) {
        int sign = (v == 1 && e.rho % 2 == 1) ? -1 : 1;
        long a = fold(e.J, sign);
        long b = fold(e.Jbar, sign);
        acc[{a, b}] += make_rational(sign, ctx.kappa);
    }
    std::vector<FormTerm> out;
    for (const auto& [key, c] : acc)
        if (c != 0) out.push_back({c, key.first, key.second, z, n});
    return out;
}

BiSeries expand_form(const std::vector<FormTerm>& form, const Rational& cutoff)
{
    BiSeries total(cutoff);
    std::map<std::tuple<long, long, int>, QSeries> cache;
    auto kappa = [&](long n, long J, int z) -> const QSeries& {
        auto key = std::make_tuple(n, J, z);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, u1_char(n, J, z, cutoff)).first;
        return it->second;
    };
    for (const auto& t : form) total += outer(kappa(t.n, t.left, t.z), kappa(t.n, t.right, t.z)) * t.coeff;
    return total;
}

std::string form_text(const std::vector<FormTerm>& form)
{
    if (form.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : form) {
        Rational mag = abs(t.coeff);
        if (first)
            os << (t.coeff < 0 ? "-" : "");
        else
            os << (t.coeff < 0 ? " - " : " + ");
        first = false;
        if (mag != 1) os << to_short_string(mag) << " ";
        const std::string zs = t.z == 1 ? "1" : "-1";
        auto k = [&](long J, const char* var) {
            return "k[" + std::to_string(t.n) + "," + half_label(J) + "](" + zs + "," + var + ")";
        };
        if (t.left == t.right)
            os << "|" << k(t.left, "q") << "|^2";
        else
            os << k(t.left, "q") << " " << k(t.right, "qbar");
    }
    return os.str();
}

}  // namespace torusloops
