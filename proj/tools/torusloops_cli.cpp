#include "torusloops/acceptance.hpp"
#include "torusloops/bezout.hpp"
#include "torusloops/cft.hpp"
#include "torusloops/lattice.hpp"
#include "torusloops/transfer.hpp"
#include "torusloops/workers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

using namespace torusloops;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string kind = "dense";
    int p = 2;
    int pq = 3;
    std::optional<double> u;
    int M = 2;
    int N = 2;
    int d = 0;
    std::optional<int> h;
    std::optional<int> v;
    double alpha = 2.0;
    std::string form = "direct";
    std::string cutoff = "8";
    std::string e0 = "0";
    long level = 2;
    std::string g = "2/3";
    double tau_re = 0.1;
    double tau_im = 0.9;
    int gauss_cutoff = 40;
    bool table = false;
    std::string suite = "core";
    std::string format = "text";
    std::string output;
    int workers = 0;
};

/// Failed checks; maps to exit code 1.
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x)
{
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

ModelSpec model(const RunConfig& c)
{
    const ModelKind kind = parse_model_kind(c.kind);
    const ModelSpec iso = ModelSpec::isotropic(kind, c.p, c.pq);
    return c.u ? ModelSpec::make(kind, c.p, c.pq, *c.u) : iso;
}

int hv(const std::optional<int>& x, const char* name)
{
    if (!x) throw std::invalid_argument(std::string("--") + name + " is required");
    return *x;
}

std::string series_csv(const json& terms)
{
    std::string out = "qexp,qbarexp,coeff\n";
    for (const auto& t : terms)
        out += t.at("qexp").get<std::string>() + "," + t.at("qbarexp").get<std::string>() + "," +
               t.at("coeff").get<std::string>() + "\n";
    return out;
}

std::string run_enumerate(const RunConfig& c)
{
    const ModelSpec spec = model(c);
    const CensusTable table = census_table(spec.kind, c.M, c.N, resolve_workers(c.workers));
    std::optional<Sector> sector;
    if (c.h || c.v) sector = Sector{hv(c.h, "h"), hv(c.v, "v")};
    long configs = 0;
    for (const auto& [census, mult] : table) configs += mult;
    const double z = lattice_Z(spec, table, sector, c.alpha);
    if (c.format == "json")
        return json{{"kind", c.kind}, {"p", c.p},   {"pq", c.pq},         {"u", spec.u},
                    {"M", c.M},       {"N", c.N},   {"alpha", c.alpha},   {"configurations", configs},
                    {"sector", sector ? json{sector->first, sector->second} : json(nullptr)},
                    {"Z", z}}
                   .dump(2) +
               "\n";
    if (c.format == "csv") return "M,N,configurations,Z\n" + std::to_string(c.M) + "," + std::to_string(c.N) + "," +
                                  std::to_string(configs) + "," + num(z) + "\n";
    return "configurations " + std::to_string(configs) + "\nZ " + num(z) + "\n";
}

std::string run_transfer(const RunConfig& c)
{
    const ModelSpec spec = model(c);
    if (c.h || c.v) {
        const double z = markov_Z(spec, c.M, c.N, hv(c.h, "h"), hv(c.v, "v"), c.alpha);
        if (c.format == "json") return json{{"markov_Z", z}}.dump(2) + "\n";
        return "markov_Z " + num(z) + "\n";
    }
    const auto coeffs = c_coefficients(trace_TM(spec, c.N, c.M, c.d), c.M);
    if (c.format == "json") {
        json j = json::object();
        for (const auto& [k, x] : coeffs) j[std::to_string(k)] = x;
        return json{{"d", c.d}, {"C", j}}.dump(2) + "\n";
    }
    std::string out = c.format == "csv" ? "j,C\n" : "";
    for (const auto& [k, x] : coeffs)
        out += (c.format == "csv" ? std::to_string(k) + "," : "C[" + std::to_string(c.d) + "," + std::to_string(k) + "] ") +
               num(x) + "\n";
    return out;
}

std::string run_series(const RunConfig& c)
{
    const Rational cutoff = parse_rational(c.cutoff);
    json terms;
    if (c.form == "full") {
        terms = to_json(full_Z_series(c.p, c.pq, parse_rational(c.e0), cutoff));
    } else if (c.form == "on") {
        terms = to_json(on_series(make_rational(c.p, c.pq), parse_rational(c.e0), cutoff));
    } else {
        const int h = hv(c.h, "h"), v = hv(c.v, "v");
        if (c.form == "direct")
            terms = to_json(Z_hv_direct(c.p, c.pq, h, v, cutoff));
        else if (c.form == "u1")
            terms = to_json(Z_hv_u1(c.p, c.pq, h, v, cutoff));
        else if (c.form == "bezout")
            terms = to_json(Z_hv_bezout(c.p, c.pq, h, v, cutoff));
        else
            throw std::invalid_argument("unknown form: " + c.form);
    }
    if (c.format == "csv") return series_csv(terms);
    return json{{"p", c.p}, {"pq", c.pq}, {"form", c.form}, {"cutoff", to_string(cutoff)}, {"terms", terms}}.dump(2) +
           "\n";
}

std::string run_identity(const RunConfig& c)
{
    const auto checks = character_identities(c.level, parse_rational(c.cutoff));
    std::string out;
    json j = json::array();
    bool ok = true;
    for (const auto& k : checks) {
        ok = ok && k.pass;
        j.push_back({{"identity", k.name}, {"pass", k.pass}});
        out += std::string(k.pass ? "pass " : "FAIL ") + k.name + "\n";
    }
    if (c.format == "json") out = j.dump(2) + "\n";
    if (!ok) throw CheckFailure(out);
    return out;
}

std::string run_bezout(const RunConfig& c)
{
    const BezoutContext ctx = BezoutContext::make(c.p, c.pq, hv(c.h, "h"), hv(c.v, "v"));
    const BezoutReport rep = verify_bezout(ctx);
    std::string out;
    if (c.format == "json") {
        json j = to_json(bezout_table(ctx));
        j["verified"] = rep.ok();
        out = j.dump(2) + "\n";
    } else if (c.format == "csv") {
        out = "r,s,label,conjugate,mu,rho\n";
        for (const auto& e : bezout_table(ctx).entries())
            out += std::to_string(e.r) + "," + std::to_string(e.s) + "," + half_label(e.J) + "," +
                   half_label(e.Jbar) + "," + std::to_string(e.mu) + "," + std::to_string(e.rho) + "\n";
    } else if (c.table) {
        out = kac_table_text(ctx);
    } else {
        const BezoutPairTable t = bezout_table(ctx);
        out = "P " + std::to_string(ctx.P) + "\nomega0 " + std::to_string(t.conjugator().omega0) + "\nverified " +
              (rep.ok() ? "yes" : "no") + "\n";
    }
    if (!rep.ok()) throw CheckFailure(out);
    return out;
}

std::string run_modular(const RunConfig& c)
{
    const TauPoint tau({c.tau_re, c.tau_im});
    const double g = parse_rational(c.g).get_d();
    double z[2][2], zt[2][2], zs[2][2];
    for (int h = 0; h < 2; ++h)
        for (int v = 0; v < 2; ++v) {
            z[h][v] = conformal_Z_numeric(g, c.alpha, h, v, tau, c.gauss_cutoff);
            zt[h][v] = conformal_Z_numeric(g, c.alpha, h, v, tau.shifted(), c.gauss_cutoff);
            zs[h][v] = conformal_Z_numeric(g, c.alpha, h, v, tau.inverted(), c.gauss_cutoff);
        }
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); };
    double worst = 0.0;
    for (double e : {rel(zt[0][0], z[0][0]), rel(zt[0][1], z[0][1]), rel(zt[1][0], z[1][1]), rel(zt[1][1], z[1][0]),
                     rel(zs[0][0], z[0][0]), rel(zs[0][1], z[1][0]), rel(zs[1][0], z[0][1]), rel(zs[1][1], z[1][1])})
        worst = std::max(worst, e);
    const ModularReport rep = modular_rep_check();
    const bool ok = worst < 1e-8 && rep.ok();
    std::string out;
    if (c.format == "json") {
        json sectors = json::array();
        for (int h = 0; h < 2; ++h)
            for (int v = 0; v < 2; ++v)
                sectors.push_back({{"h", h}, {"v", v}, {"Z", z[h][v]}, {"Z_T", zt[h][v]}, {"Z_S", zs[h][v]}});
        out = json{{"g", c.g},
                   {"alpha", c.alpha},
                   {"tau", {c.tau_re, c.tau_im}},
                   {"sectors", sectors},
                   {"max_rel_err", worst},
                   {"representation_ok", rep.ok()}}
                  .dump(2) +
              "\n";
    } else {
        if (c.format == "csv") out = "h,v,Z,Z_T,Z_S\n";
        for (int h = 0; h < 2; ++h)
            for (int v = 0; v < 2; ++v)
                out += c.format == "csv"
                           ? std::to_string(h) + "," + std::to_string(v) + "," + num(z[h][v]) + "," + num(zt[h][v]) +
                                 "," + num(zs[h][v]) + "\n"
                           : "Z(" + std::to_string(h) + "," + std::to_string(v) + ") " + num(z[h][v]) + "  T " +
                                 num(zt[h][v]) + "  S " + num(zs[h][v]) + "\n";
        if (c.format != "csv")
            out += "max rel err " + num(worst) + "\nrepresentation " + (rep.ok() ? "ok" : "FAIL") + "\n";
    }
    if (!ok) throw CheckFailure(out);
    return out;
}

std::string run_reduced_forms(const RunConfig& c)
{
    std::vector<std::pair<int, int>> sectors;
    if (c.h || c.v)
        sectors.emplace_back(hv(c.h, "h"), hv(c.v, "v"));
    else
        sectors = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    std::string out;
    json j = json::array();
    for (auto [h, v] : sectors) {
        const auto form = reduced_form(c.p, c.pq, h, v);
        const std::string text = form_text(form);
        j.push_back({{"h", h}, {"v", v}, {"form", text}});
        out += "Z(" + std::to_string(h) + "," + std::to_string(v) + ") = " + text + "\n";
    }
    if (c.format == "json") out = j.dump(2) + "\n";
    return out;
}

std::string run_accept(const RunConfig& c)
{
    if (c.suite != "core") throw std::invalid_argument("unknown suite: " + c.suite);
    const auto results = run_acceptance(resolve_workers(c.workers));
    std::string out;
    if (c.format == "json") {
        json j = json::array();
        for (const auto& r : results)
            j.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"gating", r.gating}, {"detail", r.detail}});
        out = j.dump(2) + "\n";
    } else {
        for (const auto& r : results) out += report_line(r) + "\n";
    }
    if (!gating_pass(results)) throw CheckFailure(out);
    return out;
}

void emit(const RunConfig& c, const std::string& text)
{
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + c.output);
    f << text;
}

}  // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    CLI::App app{"Torus partition functions of dense and dilute loop models"};
    app.set_help_flag("--help", "Print help and exit");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--output", cfg.output, "Write output to this file instead of stdout");
    app.add_option("--workers", cfg.workers, "Worker threads (default from " + std::string(kWorkersEnv) + ")");

    auto model_opts = [&cfg](CLI::App* s) {
        s->add_option("--kind", cfg.kind, "dense or dilute")->check(CLI::IsMember({"dense", "dilute"}))->capture_default_str();
        s->add_option("--p", cfg.p, "p")->capture_default_str();
        s->add_option("--pq", cfg.pq, "p'")->capture_default_str();
        s->add_option("--u", cfg.u, "Spectral parameter (default isotropic)");
    };
    auto sector_opts = [&cfg](CLI::App* s) {
        s->add_option("--h", cfg.h, "Horizontal sector 0 or 1")->check(CLI::Range(0, 1));
        s->add_option("--v", cfg.v, "Vertical sector 0 or 1")->check(CLI::Range(0, 1));
    };

    auto* en = app.add_subcommand("enumerate", "Lattice partition function by exhaustive enumeration");
    model_opts(en);
    sector_opts(en);
    en->add_option("--M", cfg.M, "Rows")->capture_default_str();
    en->add_option("--N", cfg.N, "Columns")->capture_default_str();
    en->add_option("--alpha", cfg.alpha, "Non-contractible loop weight")->capture_default_str();

    auto* tr = app.add_subcommand("transfer", "Module traces C_{d,j}, or the Markov sum with --h --v");
    model_opts(tr);
    sector_opts(tr);
    tr->add_option("--M", cfg.M, "Power of the transfer matrix")->capture_default_str();
    tr->add_option("--N", cfg.N, "Sites")->capture_default_str();
    tr->add_option("--d", cfg.d, "Defects")->capture_default_str();
    tr->add_option("--alpha", cfg.alpha, "Non-contractible loop weight")->capture_default_str();

    auto* se = app.add_subcommand("series", "Exact q-series of a partition function");
    se->add_option("--p", cfg.p, "p")->capture_default_str();
    se->add_option("--pq", cfg.pq, "p'")->capture_default_str();
    sector_opts(se);
    se->add_option("--form", cfg.form, "direct, u1, bezout, full or on")
        ->check(CLI::IsMember({"direct", "u1", "bezout", "full", "on"}))
        ->capture_default_str();
    se->add_option("--cutoff", cfg.cutoff, "Exponent cutoff (rational)")->capture_default_str();
    se->add_option("--e0", cfg.e0, "gamma/pi for the full and O(n) forms (rational)")->capture_default_str();

    auto* id = app.add_subcommand("identity", "u(1) character identities at level n");
    id->add_option("--n", cfg.level, "Level")->check(CLI::PositiveNumber)->capture_default_str();
    id->add_option("--cutoff", cfg.cutoff, "Exponent cutoff (rational)")->capture_default_str();

    auto* bz = app.add_subcommand("bezout", "Bezout conjugate table");
    bz->add_option("--p", cfg.p, "p")->capture_default_str();
    bz->add_option("--pq", cfg.pq, "p'")->capture_default_str();
    sector_opts(bz);
    bz->add_flag("--table", cfg.table, "Kac-table grid layout");

    auto* mo = app.add_subcommand("modular", "Modular covariance of the four sectors at one tau");
    mo->add_option("--g", cfg.g, "Coupling p/p' (rational)")->capture_default_str();
    mo->add_option("--alpha", cfg.alpha, "Non-contractible loop weight")->capture_default_str();
    mo->add_option("--tau-re", cfg.tau_re, "Re tau")->capture_default_str();
    mo->add_option("--tau-im", cfg.tau_im, "Im tau")->check(CLI::PositiveNumber)->capture_default_str();
    mo->add_option("--D", cfg.gauss_cutoff, "Gaussian sum cutoff")->capture_default_str();

    auto* ac = app.add_subcommand("appendixc", "Reduced sesquilinear forms of Z^(h,v)");
    ac->add_option("--p", cfg.p, "p")->capture_default_str();
    ac->add_option("--pq", cfg.pq, "p'")->capture_default_str();
    sector_opts(ac);

    auto* acc = app.add_subcommand("accept", "Run the acceptance suite");
    acc->add_option("--suite", cfg.suite, "Suite name")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::string out;
        if (*en)
            out = run_enumerate(cfg);
        else if (*tr)
            out = run_transfer(cfg);
        else if (*se)
            out = run_series(cfg);
        else if (*id)
            out = run_identity(cfg);
        else if (*bz)
            out = run_bezout(cfg);
        else if (*mo)
            out = run_modular(cfg);
        else if (*ac)
            out = run_reduced_forms(cfg);
        else
            out = run_accept(cfg);
        emit(cfg, out);
    } catch (const CheckFailure& e) {
        emit(cfg, e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
