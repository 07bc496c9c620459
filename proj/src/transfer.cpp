#include "torusloops/transfer.hpp"

#include "torusloops/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace torusloops {

std::complex<double> OmegaLaurent::coeff(int k) const
{
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? std::complex<double>(0.0) : it->second;
}

std::complex<double> OmegaLaurent::evaluate(std::complex<double> omega) const
{
    std::complex<double> s = 0.0;
    for (const auto& [k, c] : coeffs_) s += c * std::pow(omega, k);
    return s;
}

int OmegaLaurent::min_power() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
int OmegaLaurent::max_power() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

OmegaLaurent& OmegaLaurent::operator+=(const OmegaLaurent& o)
{
    for (const auto& [k, c] : o.coeffs_) coeffs_[k] += c;
    return *this;
}

OmegaLaurent operator*(const OmegaLaurent& a, const OmegaLaurent& b)
{
    OmegaLaurent r;
    for (const auto& [ka, ca] : a.coeffs_)
        for (const auto& [kb, cb] : b.coeffs_) r.coeffs_[ka + kb] += ca * cb;
    return r;
}

int LinkState::defects() const { return static_cast<int>(std::count(sites.begin(), sites.end(), Defect)); }

bool complete_link_state(LinkState& s)
{
    const int n = s.size();
    s.partner.assign(static_cast<std::size_t>(n), -1);
    int open = 0, close = 0, first_defect = -1;
    for (int i = 0; i < n; ++i) {
        if (s.sites[i] == LinkState::Opener) ++open;
        if (s.sites[i] == LinkState::Closer) ++close;
        if (s.sites[i] == LinkState::Defect && first_defect < 0) first_defect = i;
    }
    if (open != close) return false;
    std::vector<int> stack;
    if (first_defect >= 0) {
        for (int t = 1; t <= n; ++t) {
            const int i = (first_defect + t) % n;
            switch (s.sites[i]) {
                case LinkState::Opener: stack.push_back(i); break;
                case LinkState::Closer:
                    if (stack.empty()) return false;
                    s.partner[i] = stack.back();
                    s.partner[stack.back()] = i;
                    stack.pop_back();
                    break;
                case LinkState::Defect:
                    if (!stack.empty()) return false;
                    break;
                default: break;
            }
        }
        return stack.empty();
    }
    for (int t = 0; t < 2 * n; ++t) {
        const int i = t % n;
        if (s.sites[i] == LinkState::Opener && t < n) stack.push_back(i);
        if (s.sites[i] == LinkState::Closer && s.partner[i] < 0 && !stack.empty()) {
            s.partner[i] = stack.back();
            s.partner[stack.back()] = i;
            stack.pop_back();
        }
    }
    for (int i = 0; i < n; ++i)
        if (s.sites[i] != LinkState::Vacancy && s.sites[i] != LinkState::Defect && s.partner[i] < 0) return false;
    return true;
}

std::vector<LinkState> standard_basis(ModelKind kind, int N, int d)
{
    if (N < 1 || d < 0 || d > N) throw std::invalid_argument("invalid module (N, d)");
    if (kind == ModelKind::Dense && (N - d) % 2 != 0) throw std::invalid_argument("dense module needs d = N mod 2");
    const int base = kind == ModelKind::Dense ? 3 : 4;
    const int offset = kind == ModelKind::Dense ? 1 : 0;
    long total = 1;
    for (int i = 0; i < N; ++i) total *= base;
    std::vector<LinkState> out;
    LinkState s;
    s.sites.assign(static_cast<std::size_t>(N), 0);
    for (long code = 0; code < total; ++code) {
        long c = code;
        int defects = 0;
        for (int i = N - 1; i >= 0; --i) {
            s.sites[i] = static_cast<std::int8_t>(c % base + offset);
            c /= base;
            if (s.sites[i] == LinkState::Defect) ++defects;
        }
        if (defects != d) continue;
        if (complete_link_state(s)) out.push_back(s);
    }
    return out;
}

Eigen::MatrixXcd TransferOperator::at(std::complex<double> omega) const
{
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
    for (const auto& [k, mk] : matrix) m += std::pow(omega, k) * mk.cast<std::complex<double>>();
    return m;
}

namespace {

constexpr int kPosX[4] = {1, 2, 1, 0};

struct RowResult {
    LinkState top;
    int beta_loops = 0;
    int alpha_loops = 0;
    int omega_power = 0;
};

/// Connectivity of one row of tiles stacked on a bottom state; false when the state is annihilated.
bool compose_row(const LinkState& bottom, const std::vector<int>& tiles, RowResult& out)
{
    const int n = bottom.size();
    std::vector<std::array<bool, 4>> seen(static_cast<std::size_t>(n), std::array<bool, 4>{});
    enum class End { Top, BottomDefect, Closed };

    auto arc_shift = [&](int from, int to) {
        if (bottom.sites[from] == LinkState::Opener) return 2 * (((to - from) % n + n) % n);
        return -2 * (((from - to) % n + n) % n);
    };

    // Walk from side `side` of face `face` until the strand ends; returns the end type and its site.
    auto walk = [&](int face, int side, long& disp, int& site, bool closed) {
        const int f0 = face, s0 = side;
        while (true) {
            const auto& t = tile_shape(tiles[face]);
            const int o = t.partner(side);
            seen[face][side] = true;
            seen[face][o] = true;
            disp += kPosX[o] - kPosX[side];
            if (o == North) {
                site = face;
                return End::Top;
            }
            if (o == South) {
                if (bottom.sites[face] == LinkState::Defect) {
                    site = face;
                    return End::BottomDefect;
                }
                const int other = bottom.partner[face];
                disp += arc_shift(face, other);
                face = other;
                side = South;
            } else if (o == West) {
                face = (face + n - 1) % n;
                side = East;
            } else {
                face = (face + 1) % n;
                side = West;
            }
            if (closed && face == f0 && side == s0) return End::Closed;
        }
    };

    out = RowResult{};
    out.top.sites.assign(static_cast<std::size_t>(n), LinkState::Vacancy);
    out.top.partner.assign(static_cast<std::size_t>(n), -1);

    for (int a = 0; a < n; ++a) {
        if (!tile_shape(tiles[a]).occupied[North] || seen[a][North]) continue;
        long disp = 0;
        int site = -1;
        End e = walk(a, North, disp, site, false);
        if (e == End::Top) {
            const int o = disp > 0 ? a : site;
            const int c = disp > 0 ? site : a;
            out.top.sites[o] = LinkState::Opener;
            out.top.sites[c] = LinkState::Closer;
            out.top.partner[o] = c;
            out.top.partner[c] = o;
        } else {
            out.top.sites[a] = LinkState::Defect;
            const long up = -disp - 2L * (a - site);
            if (up % (2L * n) != 0) throw std::logic_error("defect displacement off the lattice");
            out.omega_power += static_cast<int>(up / (2L * n));
        }
    }
    for (int i = 0; i < n; ++i)
        if (bottom.sites[i] == LinkState::Defect && !seen[i][South]) return false;

    for (int f = 0; f < n; ++f) {
        const auto& t = tile_shape(tiles[f]);
        for (int s = 0; s < 4; ++s) {
            if (!t.occupied[s] || seen[f][s]) continue;
            long disp = 0;
            int site = -1;
            walk(f, s, disp, site, true);
            if (disp == 0) {
                ++out.beta_loops;
            } else if (std::labs(disp) == 2L * n) {
                ++out.alpha_loops;
            } else {
                throw std::logic_error("closed loop with impossible winding");
            }
        }
    }
    return true;
}

}  // namespace

TransferOperator build_transfer(const ModelSpec& spec, int N, int d)
{
    TransferOperator op;
    op.spec = spec;
    op.N = N;
    op.d = d;
    op.basis = standard_basis(spec.kind, N, d);
    const int dim = op.dim();
    std::map<LinkState, int> index;
    for (int i = 0; i < dim; ++i) index.emplace(op.basis[i], i);

    const auto rho = face_weights(spec);
    const double beta = spec.beta();
    const auto& labels = tile_labels(spec.kind);
    std::vector<int> tiles(static_cast<std::size_t>(N), 0);

    auto add = [&](int power, int row, int col, double w) {
        auto it = op.matrix.find(power);
        if (it == op.matrix.end()) it = op.matrix.emplace(power, Eigen::MatrixXd::Zero(dim, dim)).first;
        it->second(row, col) += w;
    };

    for (int col = 0; col < dim; ++col) {
        const LinkState& s = op.basis[col];
        auto place = [&](auto&& self, int i) -> void {
            if (i == N) {
                if (tile_shape(tiles[N - 1]).occupied[East] != tile_shape(tiles[0]).occupied[West]) return;
                RowResult r;
                if (!compose_row(s, tiles, r)) return;
                if (r.alpha_loops > 0 && d > 0) throw std::logic_error("non-contractible loop in a defect module");
                double w = std::pow(beta, r.beta_loops);
                for (int t : tiles) w *= rho[static_cast<std::size_t>(t - 1)];
                if (w == 0.0) return;
                auto it = index.find(r.top);
                if (it == index.end()) throw std::logic_error("row produced a state outside the module");
                // (omega + 1/omega)^alpha_loops
                const int na = r.alpha_loops;
                double binom = 1.0;
                for (int k = 0; k <= na; ++k) {
                    add(r.omega_power + na - 2 * k, it->second, col, w * binom);
                    binom = binom * (na - k) / (k + 1);
                }
                return;
            }
            const bool occ = s.sites[i] != LinkState::Vacancy;
            for (int label : labels) {
                const auto& t = tile_shape(label);
                if (t.occupied[South] != occ) continue;
                if (i > 0 && tile_shape(tiles[i - 1]).occupied[East] != t.occupied[West]) continue;
                tiles[i] = label;
                self(self, i + 1);
            }
        };
        place(place, 0);
    }
    return op;
}

LaurentMatrix laurent_product(const LaurentMatrix& a, const LaurentMatrix& b, int dim)
{
    LaurentMatrix r;
    for (const auto& [ka, ma] : a) {
        for (const auto& [kb, mb] : b) {
            auto it = r.find(ka + kb);
            if (it == r.end()) it = r.emplace(ka + kb, Eigen::MatrixXd::Zero(dim, dim)).first;
            it->second.noalias() += ma * mb;
        }
    }
    return r;
}

LaurentMatrix laurent_power(const LaurentMatrix& t, int M, int dim)
{
    if (M < 0) throw std::invalid_argument("negative power");
    LaurentMatrix r;
    r.emplace(0, Eigen::MatrixXd::Identity(dim, dim));
    for (int i = 0; i < M; ++i) r = laurent_product(r, t, dim);
    return r;
}

OmegaLaurent trace_TM(const TransferOperator& op, int M)
{
    OmegaLaurent tr;
    for (const auto& [k, m] : laurent_power(op.matrix, M, op.dim())) {
        const double t = m.trace();
        if (t != 0.0) tr.add(k, t);
    }
    return tr;
}

OmegaLaurent trace_TM(const ModelSpec& spec, int N, int M, int d)
{
    if (N > (spec.kind == ModelKind::Dense ? 12 : 8)) throw std::invalid_argument("module too large for dense powering");
    return trace_TM(build_transfer(spec, N, d), M);
}

std::map<int, double> c_coefficients(const OmegaLaurent& trace, int M)
{
    std::map<int, double> c;
    for (const auto& [k, v] : trace.coeffs()) {
        if (k < -M || k > M) throw std::logic_error("trace support exceeds [-M, M]");
        if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
            throw std::logic_error("complex C coefficient");
        c[-k] = v.real();
    }
    return c;
}

std::map<int, std::map<int, double>> c_table(const ModelSpec& spec, int M, int N)
{
    std::map<int, std::map<int, double>> table;
    for (int d = 0; d <= N; ++d) {
        if (spec.kind == ModelKind::Dense && (N - d) % 2 != 0) continue;
        table[d] = c_coefficients(trace_TM(spec, N, M, d), M);
    }
    return table;
}

double markov_Z_from_table(ModelKind kind, const std::map<int, std::map<int, double>>& table, int M, int N, int h,
                           int v, double alpha)
{
    if (kind == ModelKind::Dense && (h != N % 2 || v != M % 2))
        throw std::invalid_argument("dense sector must equal (N mod 2, M mod 2)");
    const double factor = kind == ModelKind::Dense ? 1.0 : 2.0;
    double z = 0.0;
    for (int d = -N; d <= N; ++d) {
        if (((d % 2) + 2) % 2 != h) continue;
        auto row = table.find(std::abs(d));
        if (row == table.end()) continue;
        for (int j = -M; j <= M; ++j) {
            if (((j % 2) + 2) % 2 != v) continue;
            auto c = row->second.find(d >= 0 ? j : -j);
            if (c == row->second.end()) continue;
            z += factor * chebyshev_T(gcd_conv(d, j), alpha / 2.0) * c->second;
        }
    }
    return z;
}

double markov_Z(const ModelSpec& spec, int M, int N, int h, int v, double alpha)
{
    return markov_Z_from_table(spec.kind, c_table(spec, M, N), M, N, h, v, alpha);
}

std::complex<double> dominant_eigenvalue(const TransferOperator& op, std::complex<double> omega)
{
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(op.at(omega), false);
    const auto& ev = es.eigenvalues();
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < ev.size(); ++i)
        if (std::abs(ev[i]) > std::abs(ev[best])) best = i;
    return ev[best];
}

}  // namespace torusloops
