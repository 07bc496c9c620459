#include "torusloops/acceptance.hpp"

#include "torusloops/bezout.hpp"
#include "torusloops/cft.hpp"
#include "torusloops/number_theory.hpp"
#include "torusloops/transfer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace torusloops {

namespace {

struct GoldenTerm {
    long coeff;
    long left;
    long right;
    int z;
};

struct GoldenForm {
    int p;
    int pp;
    int h;
    int v;
    std::vector<GoldenTerm> terms;
};

const std::vector<GoldenForm>& golden_forms()
{
    static const std::vector<GoldenForm> forms = {
#include "golden_forms.inc"
    };
    return forms;
}

struct SampleCell {
    int r;
    int s;
    const char* label;
    const char* conjugate;
};

struct KacPanel {
    int p;
    int pp;
    int h;
    int v;
    long omega0;
    std::vector<SampleCell> cells;
};

const std::vector<KacPanel>& kac_panels()
{
    static const std::vector<KacPanel> panels = {
        {3, 4, 0, 0, 7, {{0, 0, "0", "0"}, {1, 1, "1", "7"}, {0, 1, "21", "3"},
                         {2, 2, "2", "14"}, {0, 3, "15", "9"}, {2, 7, "11", "5"}}},
        {3, 4, 1, 1, 31, {{0, 0, "93/2", "3/2"}, {1, 0, "5/2", "11/2"}, {2, 1, "7/2", "25/2"},
                          {0, 3, "75/2", "21/2"}, {2, 5, "79/2", "49/2"}, {1, 7, "59/2", "53/2"}}},
        {3, 5, 0, 0, 19, {{0, 0, "0", "0"}, {1, 1, "2", "8"}, {0, 2, "24", "6"},
                          {2, 3, "1", "19"}, {1, 4, "23", "17"}, {2, 9, "13", "7"}}},
        {3, 5, 1, 1, 19, {{0, 0, "117/2", "3/2"}, {1, 1, "1/2", "19/2"}, {2, 2, "5/2", "35/2"},
                          {0, 4, "93/2", "27/2"}, {1, 6, "91/2", "49/2"}, {2, 9, "83/2", "77/2"}}},
        {4, 5, 0, 0, 9, {{0, 0, "0", "0"}, {1, 1, "1", "9"}, {0, 2, "32", "8"},
                         {3, 3, "3", "27"}, {2, 7, "22", "38"}, {1, 9, "9", "1"}}},
        {4, 5, 1, 0, 29, {{0, 0, "38", "2"}, {1, 0, "3", "7"}, {2, 1, "4", "16"},
                          {0, 3, "26", "14"}, {3, 3, "1", "29"}, {2, 4, "32", "28"}}},
    };
    return panels;
}

const std::vector<std::pair<int, int>> kSeriesPairs = {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 5}};

std::string sci(double x)
{
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << x;
    return os.str();
}

std::string full(double x)
{
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

}  // namespace

CriterionResult check_oracle(int workers)
{
    CriterionResult res{1, "lattice sum = Markov trace", true, true, ""};
    const std::vector<std::pair<ModelKind, std::pair<int, int>>> sizes = {
        {ModelKind::Dense, {2, 2}},  {ModelKind::Dense, {2, 4}},  {ModelKind::Dense, {3, 3}},
        {ModelKind::Dense, {4, 4}},  {ModelKind::Dense, {3, 4}},  {ModelKind::Dilute, {1, 2}},
        {ModelKind::Dilute, {2, 2}}, {ModelKind::Dilute, {2, 3}}, {ModelKind::Dilute, {3, 3}}};
    double worst = 0.0;
    long cases = 0;
    for (const auto& [kind, mn] : sizes) {
        const auto [M, N] = mn;
        const CensusTable table = census_table(kind, M, N, workers);
        for (auto [p, pp] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 4}}) {
            const double iso = ModelSpec::isotropic(kind, p, pp).u;
            for (double u : {iso, 0.37}) {
                const ModelSpec spec = ModelSpec::make(kind, p, pp, u);
                const auto ct = c_table(spec, M, N);
                for (double alpha : {1.0, 2.0, 0.6}) {
                    for (const auto& sector : valid_sectors(kind, M, N)) {
                        const double lz = lattice_Z(spec, table, sector, alpha);
                        const double mz = markov_Z_from_table(kind, ct, M, N, sector.first, sector.second, alpha);
                        const double err = std::abs(mz - lz) / (1.0 + std::abs(lz));
                        worst = std::max(worst, err);
                        ++cases;
                        if (!(err < 1e-9)) res.pass = false;
                    }
                }
            }
        }
    }
    res.detail = std::to_string(cases) + " cases, max rel err " + sci(worst);
    return res;
}

CriterionResult check_triple_series()
{
    CriterionResult res{2, "direct = u(1) = Bezout series", true, true, ""};
    const Rational cutoff(10);
    int checked = 0;
    for (auto [p, pp] : kSeriesPairs)
        for (int h = 0; h < 2; ++h)
            for (int v = 0; v < 2; ++v) {
                const BiSeries a = Z_hv_direct(p, pp, h, v, cutoff);
                const BiSeries b = Z_hv_u1(p, pp, h, v, cutoff);
                const BiSeries c = Z_hv_bezout(p, pp, h, v, cutoff);
                ++checked;
                if (a != b || b != c || a.valid_order() != cutoff) {
                    res.pass = false;
                    res.detail += "mismatch at (" + std::to_string(p) + "," + std::to_string(pp) + "," +
                                  std::to_string(h) + "," + std::to_string(v) + ") ";
                }
            }
    if (res.pass) res.detail = std::to_string(checked) + " sectors exact through cutoff 10";
    return res;
}

CriterionResult check_reduced_forms()
{
    CriterionResult res{3, "reduced sesquilinear forms", true, true, ""};
    const Rational cutoff(10);
    long terms = 0;
    for (const auto& g : golden_forms()) {
        std::vector<FormTerm> expected;
        for (const auto& t : g.terms)
            expected.push_back({Rational(t.coeff), t.left, t.right, t.z, static_cast<long>(g.p) * g.pp});
        const std::vector<FormTerm> got = reduced_form(g.p, g.pp, g.h, g.v);
        terms += static_cast<long>(expected.size());
        const bool same_terms = got == expected;
        const bool same_series = expand_form(expected, cutoff) == Z_hv_direct(g.p, g.pp, g.h, g.v, cutoff);
        if (!same_terms || !same_series) {
            res.pass = false;
            res.detail += "(" + std::to_string(g.p) + "," + std::to_string(g.pp) + "," + std::to_string(g.h) + "," +
                          std::to_string(g.v) + (same_terms ? ") series " : ") terms ");
        }
    }
    if (res.pass)
        res.detail = std::to_string(golden_forms().size()) + " forms, " + std::to_string(terms) +
                     " terms, expansions exact through cutoff 10";
    return res;
}

CriterionResult check_gamma_lambda()
{
    CriterionResult res{4, "Gamma = Lambda/2 and divisor lemmas", true, true, ""};
    double worst = 0.0;
    for (long d = 1; d <= 30; ++d)
        for (long m = 1; m <= d; ++m)
            for (double gamma : {0.0, 0.3, 1.0, 2.6, std::numbers::pi - 0.1}) {
                const double lhs = gamma_dm(d, m, gamma);
                const double rhs = 0.5 * lambda_fsz(d, d / gcd_conv(m, d), gamma / std::numbers::pi);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
    bool s12 = true;
    for (long d = 1; d <= 12; ++d) s12 = s12 && verify_s1_s2(d, 25);
    bool master = true;
    for (long a = 1; a <= 10; ++a)
        for (long l = 1; l <= 50; ++l) master = master && verify_master(a, l);
    res.pass = worst < 1e-10 && s12 && master;
    res.detail = "max |Gamma - Lambda/2| " + sci(worst) + ", S1=S2 " + (s12 ? "ok" : "FAIL") + ", master " +
                 (master ? "ok" : "FAIL");
    return res;
}

CriterionResult check_full_vs_on()
{
    CriterionResult res{5, "full PF = O(n) PF with q, qbar swapped", true, true, ""};
    const Rational cutoff(8);
    int checked = 0;
    for (auto [p, pp] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 4}})
        for (const Rational& e0 : {Rational(0), make_rational(1, 3), make_rational(2, 5)}) {
            const CosBiSeries full = full_Z_series(p, pp, e0, cutoff);
            const CosBiSeries on = on_series(make_rational(p, pp), e0, cutoff);
            ++checked;
            if (full != on.swapped()) {
                res.pass = false;
                res.detail += "(" + std::to_string(p) + "," + std::to_string(pp) + "," + to_short_string(e0) + ") ";
            }
        }
    if (res.pass) res.detail = std::to_string(checked) + " cases exact through cutoff 8";
    return res;
}

CriterionResult check_modular()
{
    CriterionResult res{6, "modular covariance", true, true, ""};
    double worst = 0.0;
    double coulomb = 0.0;
    for (std::complex<double> t : {std::complex<double>(0.1, 0.9), std::complex<double>(-0.4, 1.3),
                                   std::complex<double>(0.5, 0.5)}) {
        const TauPoint tau(t);
        for (auto [p, pp] : kSeriesPairs) {
            const double g = static_cast<double>(p) / pp;
            for (double alpha : {2.0, 1.2}) {
                double z[2][2], zt[2][2], zs[2][2];
                for (int h = 0; h < 2; ++h)
                    for (int v = 0; v < 2; ++v) {
                        z[h][v] = conformal_Z_numeric(g, alpha, h, v, tau, 40);
                        zt[h][v] = conformal_Z_numeric(g, alpha, h, v, tau.shifted(), 40);
                        zs[h][v] = conformal_Z_numeric(g, alpha, h, v, tau.inverted(), 40);
                        if (alpha == 2.0)
                            coulomb = std::max(coulomb, std::abs(coulomb_Z_hv(g, h, v, tau) - z[h][v]) /
                                                            std::abs(z[h][v]));
                    }
                auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); };
                for (double e : {rel(zt[0][0], z[0][0]), rel(zt[0][1], z[0][1]), rel(zt[1][0], z[1][1]),
                                 rel(zt[1][1], z[1][0]), rel(zs[0][0], z[0][0]), rel(zs[0][1], z[1][0]),
                                 rel(zs[1][0], z[0][1]), rel(zs[1][1], z[1][1])})
                    worst = std::max(worst, e);
            }
        }
    }
    const ModularReport rep = modular_rep_check();
    const bool matrices = rep.S_squared && rep.ST_cubed && rep.T_squared;
    res.pass = worst < 1e-8 && matrices && rep.ok();
    res.detail = "max rel err " + sci(worst) + ", S^2=(ST)^3=T^2=I " + (matrices ? "ok" : "FAIL") +
                 ", Coulomb agreement " + sci(coulomb) + ", character S " + sci(rep.character_S_error);
    return res;
}

CriterionResult check_bezout_panels()
{
    CriterionResult res{7, "Bezout Kac-table panels", true, true, ""};
    int cells = 0;
    for (const auto& panel : kac_panels()) {
        const BezoutContext ctx = BezoutContext::make(panel.p, panel.pp, panel.h, panel.v);
        const BezoutPairTable table = bezout_table(ctx);
        bool ok = table.conjugator().omega0 == panel.omega0 && verify_bezout(ctx).ok();
        for (const auto& c : panel.cells) {
            const BezoutEntry& e = table.at(c.r, c.s);
            ok = ok && half_label(e.J) == c.label && half_label(e.Jbar) == c.conjugate;
            ++cells;
        }
        if (!ok) {
            res.pass = false;
            res.detail += "(" + std::to_string(panel.p) + "," + std::to_string(panel.pp) + "," +
                          std::to_string(panel.h) + "," + std::to_string(panel.v) + ") ";
        }
    }
    if (res.pass) res.detail = "conjugators 7,31,19,19,9,29 and " + std::to_string(cells) + " cells match";
    return res;
}

CriterionResult check_characters()
{
    CriterionResult res{8, "character identities", true, true, ""};
    int checks = 0;
    for (long n : {2L, 6L, 12L, 15L, 20L})
        for (const auto& c : character_identities(n, Rational(12))) {
            ++checks;
            if (!c.pass) {
                res.pass = false;
                res.detail += "n=" + std::to_string(n) + " " + c.name + "; ";
            }
        }
    if (res.pass) res.detail = std::to_string(checks) + " identities exact through cutoff 12";
    return res;
}

ScalingFit scaling_fit(const ModelSpec& spec, double alpha, std::array<int, 3> sizes)
{
    ScalingFit fit;
    fit.sizes = sizes;
    const std::complex<double> omega = std::polar(1.0, std::acos(alpha / 2.0));
    Eigen::Matrix3d A;
    Eigen::Vector3d y;
    for (int k = 0; k < 3; ++k) {
        const double N = sizes[static_cast<std::size_t>(k)];
        const TransferOperator op = build_transfer(spec, sizes[static_cast<std::size_t>(k)], 0);
        fit.log_lambda[static_cast<std::size_t>(k)] = std::log(std::abs(dominant_eigenvalue(op, omega)));
        A.row(k) << N, 1.0 / N, 1.0 / (N * N * N);
        y(k) = fit.log_lambda[static_cast<std::size_t>(k)];
    }
    const Eigen::Vector3d x = A.fullPivLu().solve(y);
    fit.a = x(0);
    fit.b = x(1);
    fit.c = x(2);
    fit.c_eff = 6.0 * fit.b / (std::numbers::pi * std::sin(spec.anisotropy_angle()));
    return fit;
}

CriterionResult check_scaling()
{
    CriterionResult res{9, "effective central charge (informational)", false, false, ""};
    const ModelSpec spec = ModelSpec::isotropic(ModelKind::Dense, 2, 3);
    const ScalingFit two = scaling_fit(spec, 2.0, {6, 8, 10});
    const ScalingFit one = scaling_fit(spec, 1.0, {6, 8, 10});
    res.pass = std::abs(two.c_eff) <= 0.15;
    res.detail = "alpha=2 c_eff=" + full(two.c_eff) + " (target 0 +- 0.15); alpha=1 c_eff=" + full(one.c_eff);
    return res;
}

std::vector<CriterionResult> run_acceptance(int workers)
{
    return {check_oracle(workers), check_triple_series(), check_reduced_forms(),
            check_gamma_lambda(),  check_full_vs_on(),    check_modular(),
            check_bezout_panels(), check_characters(),   check_scaling()};
}

bool gating_pass(const std::vector<CriterionResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return !r.gating || r.pass; });
}

std::string report_line(const CriterionResult& r)
{
    std::string tag = r.pass ? "[PASS]" : (r.gating ? "[FAIL]" : "[INFO-FAIL]");
    return tag + " " + std::to_string(r.id) + " " + r.title + ": " + r.detail;
}

}  // namespace torusloops
