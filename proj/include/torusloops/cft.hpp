#pragma once

#include "torusloops/bezout.hpp"
#include "torusloops/lattice.hpp"
#include "torusloops/series.hpp"

#include <complex>
#include <string>
#include <vector>

namespace torusloops {

/// Central charge and Kac weights of the (p, p') logarithmic model.
struct KacData {
    int p = 1;
    int pp = 2;

    Rational c() const;
    Rational delta(const Rational& r, const Rational& s) const;
    /// Delta_{r,s} - c/24 = (p'r - ps)^2/(4pp') - 1/24.
    Rational reduced_weight(const Rational& r, const Rational& s) const;
};

/// Modular parameter with Im tau > 0.
struct TauPoint {
    std::complex<double> tau;

    explicit TauPoint(std::complex<double> t);
    /// q = exp(-2 pi i delta e^{-i theta}) with theta the anisotropy angle of the model at u.
    static TauPoint from_lattice(const ModelSpec& spec, double delta);

    std::complex<double> q() const;
    std::complex<double> qbar() const;
    TauPoint shifted() const { return TauPoint(tau + 1.0); }
    TauPoint inverted() const { return TauPoint(-1.0 / tau); }
};

/// kappa^n_j(z, q) for doubled label J = 2j; any integer J is accepted.
QSeries u1_char(long n, long J, int z, const Rational& cutoff);

/// Leading (ell-sum) trace series of W_{N,d,omega} with omega = exp(i pi e), scaled limit.
BiSeries verma_trace_series(ModelKind kind, int p, int pp, int d, const Rational& e, int eps, const Rational& cutoff);

/// Sum over (r, s - h/2) of (-1)^{vr} q^{(p'r-ps)^2/4pp'} qbar^{(p'r+ps)^2/4pp'} over eta(q) eta(qbar).
BiSeries Z_hv_direct(int p, int pp, int h, int v, const Rational& cutoff);
/// Products of u(1) characters over r < p, s < 2p'.
BiSeries Z_hv_u1(int p, int pp, int h, int v, const Rational& cutoff);
/// (1/kappa) sum over the Bezout table of (-1)^{v rho} kappa_J(q) kappa_Jbar(qbar).
BiSeries Z_hv_bezout(int p, int pp, int h, int v, const Rational& cutoff);

/// Full dilute conformal partition function at gamma = pi e0, coefficients formal in gamma.
CosBiSeries full_Z_series(int p, int pp, const Rational& e0, const Rational& cutoff);
/// O(n) partition function with coupling g at e0, coefficients formal in gamma = pi e0.
CosBiSeries on_series(const Rational& g, const Rational& e0, const Rational& cutoff);

std::complex<double> eta_numeric(const TauPoint& tau);

/// Z_{m,m'}(g) at tau.
double Zmm(double g, long m, long mp, const TauPoint& tau);
/// Sum over d = h, j = v mod 2 of 2 T_{d^j}(alpha/2) Z_{d,j}(g/4) with |d|, |j| <= D.
double conformal_Z_numeric(double g, double alpha, int h, int v, const TauPoint& tau, int D = 40);
/// Theta-lattice form of the generalized Coulomb partition function.
double coulomb_Z_hv(double g, int h, int v, const TauPoint& tau);

/// kappa^n_j(z, q) evaluated at a complex q.
std::complex<double> u1_char_numeric(long n, long J, int z, const TauPoint& tau);

/// Z_{r,s}^{(h,v)} = kappa_{p'r - p(s+h/2)}(z, q) kappa_{p'r + p(s+h/2)}(z, qbar) with z = (-1)^{pv}.
BiSeries Z_rs(int p, int pp, int h, int v, long r, long s, const Rational& cutoff);

struct NamedCheck {
    std::string name;
    bool pass = false;
};

/// Periodicity, folding, vanishing and intertwining relations of the level-n characters through cutoff.
std::vector<NamedCheck> character_identities(long n, const Rational& cutoff);

/// One term c kappa^n_{left}(z, q) kappa^n_{right}(z, qbar), labels doubled.
struct FormTerm {
    Rational coeff;
    long left = 0;
    long right = 0;
    int z = 1;
    long n = 1;

    bool operator==(const FormTerm& o) const
    {
        return coeff == o.coeff && left == o.left && right == o.right && z == o.z && n == o.n;
    }
};

/// Bezout sum with every label folded into [0, n] and like terms combined, ordered by (left, right).
std::vector<FormTerm> reduced_form(int p, int pp, int h, int v);
BiSeries expand_form(const std::vector<FormTerm>& form, const Rational& cutoff);
/// Text with kappa written "k[n,j](z,q)"; |.|^2 for diagonal terms.
std::string form_text(const std::vector<FormTerm>& form);

struct ModularReport {
    bool S_squared = false;
    bool ST_cubed = false;
    bool T_squared = false;
    bool S_swaps_01_10 = false;
    bool T_swaps_10_11 = false;
    bool T_sign = false;
    double character_S_error = 0.0;
    bool character_S = false;

    bool ok() const
    {
        return S_squared && ST_cubed && T_squared && S_swaps_01_10 && T_swaps_10_11 && T_sign && character_S;
    }
};

/// 4-dim permutation representation, the T-sign rule on 4n labels, and the character S matrix at sampled tau.
ModularReport modular_rep_check();

}  // namespace torusloops
