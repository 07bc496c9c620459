#include "torusloops/bezout.hpp"

#include <doctest.h>

#include <numeric>
#include <set>
#include <sstream>

using namespace torusloops;

TEST_CASE("contexts")
{
    const BezoutContext c = BezoutContext::make(3, 4, 1, 1);
    CHECK(c.n == 12);
    CHECK(c.hp == 1);
    CHECK(c.P == 48);
    CHECK(c.kappa == 2);
    CHECK(c.z() == -1);
    CHECK(BezoutContext::make(4, 5, 1, 1).hp == 0);
    CHECK(BezoutContext::make(4, 5, 1, 1).P == 40);
    CHECK_THROWS_AS(BezoutContext::make(3, 6, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(BezoutContext::make(3, 4, 2, 0), std::invalid_argument);
}

TEST_CASE("panel conjugators and cells")
{
    struct Cell {
        int r, s;
        const char* j;
        const char* jbar;
    };
    struct Panel {
        int p, pp, h, v;
        long omega0;
        std::vector<Cell> cells;
    };
    const std::vector<Panel> panels = {
        {3, 4, 0, 0, 7, {{0, 0, "0", "0"}, {1, 1, "1", "7"}, {0, 1, "21", "3"}, {2, 7, "11", "5"}}},
        {3, 4, 1, 1, 31, {{0, 0, "93/2", "3/2"}, {1, 0, "5/2", "11/2"}, {1, 7, "59/2", "53/2"}}},
        {3, 5, 0, 0, 19, {{1, 1, "2", "8"}, {2, 3, "1", "19"}, {2, 9, "13", "7"}}},
        {3, 5, 1, 1, 19, {{0, 0, "117/2", "3/2"}, {1, 1, "1/2", "19/2"}, {2, 9, "83/2", "77/2"}}},
        {4, 5, 0, 0, 9, {{1, 1, "1", "9"}, {3, 3, "3", "27"}, {1, 9, "9", "1"}}},
        {4, 5, 1, 0, 29, {{0, 0, "38", "2"}, {3, 3, "1", "29"}, {2, 4, "32", "28"}}},
    };
    for (const auto& pn : panels) {
        const BezoutPairTable t = bezout_table(BezoutContext::make(pn.p, pn.pp, pn.h, pn.v));
        CHECK(t.conjugator().omega0 == pn.omega0);
        for (const auto& c : pn.cells) {
            CHECK(half_label(t.at(c.r, c.s).J) == c.j);
            CHECK(half_label(t.at(c.r, c.s).Jbar) == c.jbar);
        }
    }
}

TEST_CASE("full sweep of the table properties")
{
    for (int p = 1; p <= 7; ++p)
        for (int pp = p + 1; pp <= 9; ++pp) {
            if (std::gcd(p, pp) != 1) continue;
            for (int h = 0; h < 2; ++h)
                for (int v = 0; v < 2; ++v) {
                    const BezoutContext ctx = BezoutContext::make(p, pp, h, v);
                    const BezoutReport r = verify_bezout(ctx);
                    INFO(p, " ", pp, " ", h, " ", v);
                    CHECK(r.bijection);
                    CHECK(r.involution);
                    CHECK(r.shift_identity);
                    CHECK(r.mu_table);
                    CHECK(r.rho_congruence);
                    CHECK(r.sign_equivalence);
                    CHECK(r.omega_odd);
                    CHECK(r.omega_square);
                    std::set<long> labels;
                    for (const auto& e : bezout_table(ctx).entries()) labels.insert(e.J);
                    CHECK(static_cast<long>(labels.size()) == ctx.P);
                }
        }
}

TEST_CASE("table lookups")
{
    const BezoutPairTable t = bezout_table(BezoutContext::make(3, 4, 0, 0));
    CHECK(t.by_label(t.at(1, 1).Jbar).Jbar == t.at(1, 1).J);
    CHECK_THROWS_AS(t.at(3, 0), std::out_of_range);
    CHECK_THROWS_AS(t.by_label(1000), std::out_of_range);
    CHECK(rho_j(t.context(), 2, 14) == 1);
}

TEST_CASE("labels render as fractions")
{
    CHECK(half_label(0) == "0");
    CHECK(half_label(14) == "7");
    CHECK(half_label(93) == "93/2");
}

TEST_CASE("Kac table text")
{
    const BezoutContext ctx = BezoutContext::make(3, 4, 0, 0);
    const std::string text = kac_table_text(ctx);
    std::istringstream in(text);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    // header, s rows, footer
    CHECK(lines.size() == static_cast<std::size_t>(ctx.s_count()) + 2);
    CHECK(lines[lines.size() - 2].rfind("s=0   0,0", 0) == 0);
    CHECK(lines.back().find("r=2") != std::string::npos);

    const BezoutContext big = BezoutContext::make(3, 4, 1, 1);
    CHECK(big.s_count() == 16);
    const std::string t2 = kac_table_text(big);
    CHECK(t2.find("----") != std::string::npos);
    CHECK(t2.find("93/2,3/2") != std::string::npos);
}

TEST_CASE("json table")
{
    const auto j = to_json(bezout_table(BezoutContext::make(4, 5, 1, 0)));
    CHECK(j.at("omega0") == 29);
    CHECK(j.at("cells").size() == 40);
}
