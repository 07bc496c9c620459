#pragma once

#include "torusloops/lattice.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace torusloops {

/// Laurent polynomial sum_k c_k omega^k with complex coefficients.
class OmegaLaurent {
public:
    using Coeffs = std::map<int, std::complex<double>>;

    OmegaLaurent() = default;
    explicit OmegaLaurent(const Coeffs& c) : coeffs_(c) {}

    const Coeffs& coeffs() const { return coeffs_; }
    std::complex<double> coeff(int k) const;
    void add(int k, std::complex<double> c) { coeffs_[k] += c; }
    std::complex<double> evaluate(std::complex<double> omega) const;
    int min_power() const;
    int max_power() const;

    OmegaLaurent& operator+=(const OmegaLaurent& o);
    friend OmegaLaurent operator*(const OmegaLaurent& a, const OmegaLaurent& b);

private:
    Coeffs coeffs_;
};

/// Per-site data of a boundary state on the periodic row.
struct LinkState {
    enum Site : std::int8_t { Vacancy = 0, Defect = 1, Opener = 2, Closer = 3 };

    std::vector<std::int8_t> sites;
    /// Arc partner of each paired site, -1 otherwise; an arc runs rightward from its opener to its closer.
    std::vector<int> partner;

    int size() const { return static_cast<int>(sites.size()); }
    int defects() const;
    bool operator<(const LinkState& o) const { return sites < o.sites; }
    bool operator==(const LinkState& o) const { return sites == o.sites; }
};

/// Planar pairing of a site pattern on the annulus, or false when the pattern is not a valid state.
bool complete_link_state(LinkState& s);

/// Canonical basis of the standard module with d defects on N sites.
std::vector<LinkState> standard_basis(ModelKind kind, int N, int d);

/// Laurent matrix T = sum_k T_k omega^k; column index is the input state.
using LaurentMatrix = std::map<int, Eigen::MatrixXd>;

struct TransferOperator {
    ModelSpec spec;
    int N = 0;
    int d = 0;
    std::vector<LinkState> basis;
    LaurentMatrix matrix;

    int dim() const { return static_cast<int>(basis.size()); }
    Eigen::MatrixXcd at(std::complex<double> omega) const;
};

/// One-row transfer matrix on W_{N,d,omega}.
TransferOperator build_transfer(const ModelSpec& spec, int N, int d);

LaurentMatrix laurent_product(const LaurentMatrix& a, const LaurentMatrix& b, int dim);
LaurentMatrix laurent_power(const LaurentMatrix& t, int M, int dim);

/// tr T^M = sum_j omega^{-j} C_{d,j}.
OmegaLaurent trace_TM(const ModelSpec& spec, int N, int M, int d);
OmegaLaurent trace_TM(const TransferOperator& op, int M);

/// Fourier coefficients C_{d,j}, j in [-M, M], for d >= 0.
std::map<int, double> c_coefficients(const OmegaLaurent& trace, int M);

/// Markov-trace assembly of Z^{(h,v)}(alpha) from the module traces.
double markov_Z(const ModelSpec& spec, int M, int N, int h, int v, double alpha);

/// Module traces C_{d,j} for d = 0..N (only d = N mod 2 for dense), keyed by d.
std::map<int, std::map<int, double>> c_table(const ModelSpec& spec, int M, int N);

/// Markov sum from a precomputed C table.
double markov_Z_from_table(ModelKind kind, const std::map<int, std::map<int, double>>& table, int M, int N, int h,
                           int v, double alpha);

/// Largest-modulus eigenvalue of T at twist omega.
std::complex<double> dominant_eigenvalue(const TransferOperator& op, std::complex<double> omega);

}  // namespace torusloops
