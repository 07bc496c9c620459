#include "torusloops/bezout.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace torusloops {

namespace {

long mod(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

long doubled_label(const BezoutContext& c, int r, int s, int sign)
{
    return mod(2L * c.pp * r + sign * (2L * c.p * s + static_cast<long>(c.p) * c.h), 2 * c.P);
}

}  // namespace

BezoutContext BezoutContext::make(int p, int pp, int h, int v)
{
    if (p < 1 || pp < 1 || std::gcd(p, pp) != 1) throw std::invalid_argument("p and p' must be coprime positive integers");
    if ((h != 0 && h != 1) || (v != 0 && v != 1)) throw std::invalid_argument("h and v must be 0 or 1");
    BezoutContext c;
    c.p = p;
    c.pp = pp;
    c.h = h;
    c.v = v;
    c.n = static_cast<long>(p) * pp;
    c.hp = (p % 2 == 1 && h == 1) ? 1 : 0;
    c.P = (p * v) % 2 == 0 ? 2 * c.n : 4 * c.n;
    c.kappa = static_cast<int>(c.P / (2 * c.n));
    return c;
}

BezoutConjugator bezout_conjugator(const BezoutContext& ctx)
{
    const long target = ctx.hp == 0 ? 2 : 1;
    for (int r = 0; r < ctx.p; ++r)
        for (int s = 0; s < ctx.s_count(); ++s)
            if (doubled_label(ctx, r, s, -1) == target) {
                long jbar = doubled_label(ctx, r, s, +1);
                return {ctx.hp == 0 ? jbar / 2 : jbar, r, s};
            }
    throw std::logic_error("no Kac label maps to the unit label");
}

const BezoutEntry& BezoutPairTable::at(int r, int s) const
{
    if (r < 0 || r >= ctx_.p || s < 0 || s >= ctx_.s_count()) throw std::out_of_range("Kac label outside the table");
    return entries_[static_cast<std::size_t>(r * ctx_.s_count() + s)];
}

const BezoutEntry& BezoutPairTable::by_label(long J) const
{
    for (const auto& e : entries_)
        if (e.J == J) return e;
    throw std::out_of_range("label not in table");
}

Rational rho_j(const BezoutContext& ctx, long J, long Jbar) { return make_rational(J + Jbar, 4L * ctx.pp); }

BezoutPairTable bezout_table(const BezoutContext& ctx)
{
    const BezoutConjugator conj = bezout_conjugator(ctx);
    const long twoP = 2 * ctx.P;
    std::vector<BezoutEntry> entries;
    std::set<long> seen;
    for (int r = 0; r < ctx.p; ++r) {
        for (int s = 0; s < ctx.s_count(); ++s) {
            BezoutEntry e;
            e.r = r;
            e.s = s;
            e.J = doubled_label(ctx, r, s, -1);
            e.Jbar = doubled_label(ctx, r, s, +1);
            long diff = mod(e.Jbar - conj.omega0 * e.J, twoP);
            if (diff == 0)
                e.mu = 0;
            else if (diff == ctx.P)
                e.mu = 1;
            else
                e.mu = -1;
            Rational rho = rho_j(ctx, e.J, e.Jbar);
            e.rho = is_integer(rho) ? rho.get_num().get_si() : -1;
            seen.insert(e.J);
            entries.push_back(e);
        }
    }
    if (static_cast<long>(seen.size()) != ctx.P || static_cast<long>(entries.size()) != ctx.P)
        throw std::logic_error("Bezout labels are not a bijection");
    return BezoutPairTable(ctx, std::move(entries), conj);
}

int mu_shift(const BezoutContext& ctx, const BezoutConjugator& conj, int r, int s)
{
    auto parity = [](long x) { return static_cast<int>(mod(x, 2)); };
    if (ctx.p % 2 == 1) {
        if (ctx.v == 0) return 0;
        if (ctx.h == 0) return parity(static_cast<long>(r) * conj.s0 - static_cast<long>(conj.r0) * s);
        return parity(r - conj.r0);
    }
    if (ctx.h == 0) return 0;
    return parity(r - conj.r0);
}

BezoutReport verify_bezout(const BezoutContext& ctx)
{
    BezoutReport rep;
    const BezoutConjugator conj = bezout_conjugator(ctx);
    rep.omega_odd = conj.omega0 % 2 == 1;
    rep.omega_square = mod(conj.omega0 * conj.omega0, ctx.P) == 1;
    BezoutPairTable table = [&] {
        try {
            return bezout_table(ctx);
        } catch (const std::logic_error&) {
            return BezoutPairTable(ctx, {}, conj);
        }
    }();
    if (table.entries().empty()) return rep;

    std::set<long> labels;
    std::set<long> conjugates;
    for (const auto& e : table.entries()) {
        labels.insert(e.J);
        conjugates.insert(e.Jbar);
    }
    const long parity = ctx.hp;
    rep.bijection = static_cast<long>(labels.size()) == ctx.P && static_cast<long>(conjugates.size()) == ctx.P &&
                    std::all_of(labels.begin(), labels.end(), [&](long J) { return J % 2 == parity; });

    const long twoP = 2 * ctx.P;
    const long pk = static_cast<long>(ctx.p) * ctx.kappa;
    rep.shift_identity = rep.involution = rep.mu_table = rep.rho_congruence = rep.sign_equivalence = true;
    for (const auto& e : table.entries()) {
        if (e.mu < 0) {
            rep.shift_identity = false;
            continue;
        }
        if (mod(conj.omega0 * e.Jbar + static_cast<long>(e.mu) * ctx.P, twoP) != e.J) rep.involution = false;
        if (mu_shift(ctx, conj, e.r, e.s) != e.mu) rep.mu_table = false;
        if (e.rho < 0 || mod(e.rho - e.r, pk) != 0) rep.rho_congruence = false;
        if (ctx.v == 1 && mod(e.rho, 2) != mod(e.r, 2)) rep.sign_equivalence = false;
    }
    return rep;
}

std::string half_label(long doubled)
{
    if (doubled % 2 == 0) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

std::string kac_table_text(const BezoutContext& ctx)
{
    const BezoutPairTable table = bezout_table(ctx);
    const int rows = ctx.s_count();
    std::size_t width = 0;
    for (const auto& e : table.entries())
        width = std::max(width, half_label(e.J).size() + half_label(e.Jbar).size() + 1);

    auto pad = [width](const std::string& s) { return s + std::string(width - s.size() + 2, ' '); };
    std::ostringstream os;
    os << "(p,p')=(" << ctx.p << "," << ctx.pp << ") h=" << ctx.h << " v=" << ctx.v << " P=" << ctx.P
       << " omega0=" << table.conjugator().omega0 << "\n";
    const std::string rule(6 + static_cast<std::size_t>(ctx.p) * (width + 2), '-');
    for (int s = rows - 1; s >= 0; --s) {
        if (s == 2 * ctx.pp - 1 && rows > 2 * ctx.pp) os << rule << "\n";
        std::string label = "s=" + std::to_string(s);
        os << label << std::string(label.size() < 6 ? 6 - label.size() : 1, ' ');
        for (int r = 0; r < ctx.p; ++r) {
            const auto& e = table.at(r, s);
            os << pad(half_label(e.J) + "," + half_label(e.Jbar));
        }
        os << "\n";
    }
    os << std::string(6, ' ');
    for (int r = 0; r < ctx.p; ++r) os << pad("r=" + std::to_string(r));
    os << "\n";
    std::string out = os.str();
    std::string clean;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) {
        line.erase(line.find_last_not_of(' ') + 1);
        clean += line + "\n";
    }
    return clean;
}

nlohmann::json to_json(const BezoutPairTable& table)
{
    const auto& c = table.context();
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& e : table.entries())
        cells.push_back({{"r", e.r},
                         {"s", e.s},
                         {"label", half_label(e.J)},
                         {"conjugate", half_label(e.Jbar)},
                         {"mu", e.mu},
                         {"rho", e.rho}});
    return {{"p", c.p},
            {"pq", c.pp},
            {"h", c.h},
            {"v", c.v},
            {"n", c.n},
            {"P", c.P},
            {"kappa", c.kappa},
            {"omega0", table.conjugator().omega0},
            {"r0", table.conjugator().r0},
            {"s0", table.conjugator().s0},
            {"cells", cells}};
}

}  // namespace torusloops
