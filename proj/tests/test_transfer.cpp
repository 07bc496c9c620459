#include "torusloops/number_theory.hpp"
#include "torusloops/transfer.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace torusloops;

namespace {

long binom(long n, long k)
{
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("module dimensions")
{
    CHECK(standard_basis(ModelKind::Dense, 4, 0).size() == 6);
    for (int N = 1; N <= 8; ++N)
        for (int d = N % 2; d <= N; d += 2)
            CHECK(static_cast<long>(standard_basis(ModelKind::Dense, N, d).size()) == binom(N, (N - d) / 2));
    for (int N = 1; N <= 6; ++N)
        for (int d = 0; d <= N; ++d) {
            long expected = 0;
            for (int k = d; k <= N; k += 2) expected += binom(N, k) * binom(k, (k - d) / 2);
            CHECK(static_cast<long>(standard_basis(ModelKind::Dilute, N, d).size()) == expected);
        }
    CHECK_THROWS_AS(standard_basis(ModelKind::Dense, 4, 1), std::invalid_argument);
}

TEST_CASE("dense N = 2, d = 2 by hand")
{
    const ModelSpec spec = ModelSpec::make(ModelKind::Dense, 2, 3, 0.37);
    const auto r = face_weights(spec);
    const TransferOperator op = build_transfer(spec, 2, 2);
    REQUIRE(op.dim() == 1);
    const std::complex<double> w = std::polar(1.0, 0.7);
    const std::complex<double> t = op.at(w)(0, 0);
    const std::complex<double> expected = r[8] * r[8] * w + r[7] * r[7] / w;
    CHECK(std::abs(t - expected) < 1e-12);
}

TEST_CASE("dilute N = 1, d = 0")
{
    // The W-E tile also closes on one site and wraps once around the seam.
    const ModelSpec spec = ModelSpec::make(ModelKind::Dilute, 2, 3, 0.37);
    const auto r = face_weights(spec);
    const OmegaLaurent t = trace_TM(spec, 1, 1, 0);
    CHECK(t.coeff(0).real() == doctest::Approx(r[0]));
    CHECK(t.coeff(1).real() == doctest::Approx(r[6]));
    CHECK(t.coeff(-1).real() == doctest::Approx(r[6]));
}

TEST_CASE("M = 0 gives the module dimension")
{
    const ModelSpec spec = ModelSpec::isotropic(ModelKind::Dilute, 3, 4);
    const OmegaLaurent t = trace_TM(spec, 3, 0, 1);
    CHECK(t.coeff(0).real() == doctest::Approx(standard_basis(ModelKind::Dilute, 3, 1).size()));
    CHECK(t.min_power() == 0);
    CHECK(t.max_power() == 0);
}

TEST_CASE("dense parity selection rule")
{
    const ModelSpec spec = ModelSpec::make(ModelKind::Dense, 3, 4, 0.37);
    for (int N : {2, 3, 4})
        for (int M : {1, 2, 3})
            for (int d = N % 2; d <= N; d += 2)
                for (const auto& [j, c] : c_coefficients(trace_TM(spec, N, M, d), M))
                    if ((j + M) % 2 != 0) CHECK(std::abs(c) < 1e-12);
}

TEST_CASE("Laurent trace at omega = 1 matches a plain matrix power")
{
    const ModelSpec spec = ModelSpec::make(ModelKind::Dilute, 2, 3, 0.37);
    const TransferOperator op = build_transfer(spec, 2, 1);
    const Eigen::MatrixXcd T = op.at(1.0);
    const Eigen::MatrixXcd T2 = T * T;
    CHECK(std::abs(trace_TM(op, 2).evaluate(1.0) - T2.trace()) < 1e-12);
}

TEST_CASE("transfer matrices commute")
{
    for (ModelKind kind : {ModelKind::Dense, ModelKind::Dilute}) {
        const int N = kind == ModelKind::Dense ? 4 : 3;
        const int step = kind == ModelKind::Dense ? 2 : 1;
        for (int d = 0; d <= 2; d += step) {
            const TransferOperator a = build_transfer(ModelSpec::make(kind, 2, 3, 0.21), N, d);
            const TransferOperator b = build_transfer(ModelSpec::make(kind, 2, 3, 0.64), N, d);
            const std::complex<double> w = std::polar(1.0, 0.9);
            const Eigen::MatrixXcd A = a.at(w), B = b.at(w);
            CHECK((A * B - B * A).norm() < 1e-10 * (1.0 + (A * B).norm()));
        }
    }
}

TEST_CASE("Chebyshev weight at gcd(4,6)")
{
    CHECK(chebyshev_T(gcd_conv(4, 6), 0.3) == doctest::Approx(2 * 0.09 - 1));
}

TEST_CASE("Markov sum equals the lattice sum")
{
    for (auto [kind, M, N] : std::vector<std::tuple<ModelKind, int, int>>{
             {ModelKind::Dense, 2, 2}, {ModelKind::Dense, 3, 2}, {ModelKind::Dilute, 1, 2}, {ModelKind::Dilute, 2, 2}})
        for (double alpha : {0.6, 1.0, 2.0}) {
            const ModelSpec spec = ModelSpec::make(kind, 3, 4, 0.37);
            for (const auto& s : valid_sectors(kind, M, N)) {
                const double lz = lattice_Z(spec, M, N, s, alpha);
                const double mz = markov_Z(spec, M, N, s.first, s.second, alpha);
                CHECK(std::abs(mz - lz) / (1 + std::abs(lz)) < 1e-9);
            }
        }
}

TEST_CASE("dominant eigenvalue of the dense ground-state module")
{
    const ModelSpec spec = ModelSpec::isotropic(ModelKind::Dense, 2, 3);
    const TransferOperator op = build_transfer(spec, 4, 0);
    const std::complex<double> lam = dominant_eigenvalue(op, 1.0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(op.at(1.0));
    double largest = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) largest = std::max(largest, std::abs(es.eigenvalues()[i]));
    CHECK(std::abs(lam) == doctest::Approx(largest));
}
