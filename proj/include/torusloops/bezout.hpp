#pragma once

#include "torusloops/rational.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace torusloops {

/// (p, p', h, v) with the derived level n = p p', half-label flag h', period P and kappa = P/2n.
struct BezoutContext {
    int p = 1;
    int pp = 2;
    int h = 0;
    int v = 0;
    long n = 2;
    int hp = 0;
    long P = 4;
    int kappa = 1;

    static BezoutContext make(int p, int pp, int h, int v);

    /// Character twist (-1)^{pv}.
    int z() const { return (p * v) % 2 == 0 ? 1 : -1; }
    /// Number of s values in the Kac set, (P/n) p'.
    int s_count() const { return static_cast<int>(P / n) * pp; }
};

/// Labels are stored doubled: J = 2(j + h'/2), Jbar = 2 conj(j + h'/2), both in [0, 2P).
struct BezoutEntry {
    int r = 0;
    int s = 0;
    long J = 0;
    long Jbar = 0;
    /// Half-period shift solving Jbar = omega0 J + mu P (mod 2P).
    int mu = 0;
    long rho = 0;
};

struct BezoutConjugator {
    long omega0 = 1;
    int r0 = 0;
    int s0 = 0;
};

BezoutConjugator bezout_conjugator(const BezoutContext& ctx);

class BezoutPairTable {
public:
    BezoutPairTable(BezoutContext ctx, std::vector<BezoutEntry> entries, BezoutConjugator conj)
        : ctx_(ctx), entries_(std::move(entries)), conj_(conj)
    {
    }

    const BezoutContext& context() const { return ctx_; }
    const BezoutConjugator& conjugator() const { return conj_; }
    const std::vector<BezoutEntry>& entries() const { return entries_; }
    const BezoutEntry& at(int r, int s) const;
    /// Entry whose doubled label is J; throws when absent.
    const BezoutEntry& by_label(long J) const;

private:
    BezoutContext ctx_;
    std::vector<BezoutEntry> entries_;
    BezoutConjugator conj_;
};

/// Full table over the Kac set; throws std::logic_error when the labels are not a bijection onto [0, 2P).
BezoutPairTable bezout_table(const BezoutContext& ctx);

/// mu from the closed-form case table in terms of (r, s) and (r0, s0).
int mu_shift(const BezoutContext& ctx, const BezoutConjugator& conj, int r, int s);

/// rho = (J + Jbar)/(4p') for doubled labels.
Rational rho_j(const BezoutContext& ctx, long J, long Jbar);

struct BezoutReport {
    bool bijection = false;
    bool involution = false;
    bool shift_identity = false;
    bool mu_table = false;
    bool rho_congruence = false;
    bool sign_equivalence = false;
    bool omega_odd = false;
    bool omega_square = false;

    bool ok() const
    {
        return bijection && involution && shift_identity && mu_table && rho_congruence && sign_equivalence &&
               omega_odd && omega_square;
    }
};

BezoutReport verify_bezout(const BezoutContext& ctx);

/// Doubled label as "j" or "j/2".
std::string half_label(long doubled);

/// Kac-table grid, s descending down the page and r across, with a rule above s = 2p' - 1 marking the frame.
std::string kac_table_text(const BezoutContext& ctx);

nlohmann::json to_json(const BezoutPairTable& table);

}  // namespace torusloops
