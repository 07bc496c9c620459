#include "torusloops/lattice.hpp"

#include "torusloops/number_theory.hpp"
#include "torusloops/workers.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace torusloops {

const char* to_string(ModelKind kind) { return kind == ModelKind::Dense ? "dense" : "dilute"; }

ModelKind parse_model_kind(const std::string& name)
{
    if (name == "dense") return ModelKind::Dense;
    if (name == "dilute") return ModelKind::Dilute;
    throw std::invalid_argument("unknown model kind: " + name);
}

ModelSpec ModelSpec::make(ModelKind kind, int p, int pp, double u)
{
    if (p < 1 || pp < 1) throw std::invalid_argument("p and p' must be positive");
    if (p >= pp) throw std::invalid_argument("need p < p'");
    if (std::gcd(p, pp) != 1) throw std::invalid_argument("p and p' must be coprime");
    return ModelSpec{kind, p, pp, u};
}

ModelSpec ModelSpec::isotropic(ModelKind kind, int p, int pp)
{
    ModelSpec s = make(kind, p, pp, 0.0);
    s.u = s.isotropic_u();
    return s;
}

double ModelSpec::lambda() const
{
    if (kind == ModelKind::Dense) return std::numbers::pi * (pp - p) / pp;
    return std::numbers::pi * (2.0 * pp - p) / (4.0 * pp);
}

double ModelSpec::beta() const { return 2.0 * std::cos(std::numbers::pi * (pp - p) / pp); }

double ModelSpec::isotropic_u() const { return kind == ModelKind::Dense ? lambda() / 2.0 : 1.5 * lambda(); }

double ModelSpec::anisotropy_angle() const
{
    return kind == ModelKind::Dense ? std::numbers::pi * u / lambda() : std::numbers::pi * u / (3.0 * lambda());
}

std::array<double, 9> face_weights(const ModelSpec& spec)
{
    const double lam = spec.lambda();
    const double sl = std::sin(lam);
    if (std::abs(sl) < 1e-14) throw std::invalid_argument("lambda is a multiple of pi");
    auto s = [sl](double x) { return std::sin(x) / sl; };
    const double u = spec.u;
    std::array<double, 9> r{};
    if (spec.kind == ModelKind::Dense) {
        r[7] = s(lam - u);
        r[8] = s(u);
        return r;
    }
    r[0] = s(2 * lam) * s(3 * lam) + s(u) * s(3 * lam - u);
    r[1] = r[2] = s(2 * lam) * s(3 * lam - u);
    r[3] = r[4] = s(2 * lam) * s(u);
    r[5] = r[6] = s(u) * s(3 * lam - u);
    r[7] = s(2 * lam - u) * s(3 * lam - u);
    r[8] = -s(u) * s(lam - u);
    return r;
}

int TileShape::partner(int side) const
{
    for (auto [a, b] : links) {
        if (a == side) return b;
        if (b == side) return a;
    }
    return -1;
}

namespace {

TileShape shape(std::vector<std::pair<int, int>> links)
{
    TileShape t;
    for (auto [a, b] : links) {
        t.occupied[a] = true;
        t.occupied[b] = true;
    }
    t.links = std::move(links);
    return t;
}

const std::array<TileShape, 9>& shapes()
{
    static const std::array<TileShape, 9> all = {
        shape({}),
        shape({{South, West}}),
        shape({{North, East}}),
        shape({{South, East}}),
        shape({{North, West}}),
        shape({{South, North}}),
        shape({{West, East}}),
        shape({{South, West}, {North, East}}),
        shape({{South, East}, {North, West}}),
    };
    return all;
}

/// Doubled coordinates of the side midpoints inside a unit face.
constexpr int kPosX[4] = {1, 2, 1, 0};
constexpr int kPosY[4] = {0, 1, 2, 1};

int positive_mod(int a, int m)
{
    int r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

const TileShape& tile_shape(int label)
{
    if (label < 1 || label > 9) throw std::out_of_range("tile label outside 1..9");
    return shapes()[static_cast<std::size_t>(label - 1)];
}

const std::vector<int>& tile_labels(ModelKind kind)
{
    static const std::vector<int> dense = {8, 9};
    static const std::vector<int> dilute = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    return kind == ModelKind::Dense ? dense : dilute;
}

bool TileGrid::edges_match() const
{
    for (int y = 0; y < M; ++y) {
        for (int x = 0; x < N; ++x) {
            const auto& t = tile_shape(at(x, y));
            if (t.occupied[East] != tile_shape(at((x + 1) % N, y)).occupied[West]) return false;
            if (t.occupied[North] != tile_shape(at(x, (y + 1) % M)).occupied[South]) return false;
        }
    }
    return true;
}

int LoopCensus::n_noncontractible() const
{
    int n = 0;
    for (const auto& [c, k] : windings) n += k;
    return n;
}

namespace {

auto census_key(const LoopCensus& c)
{
    return std::tie(c.n_beta, c.windings, c.tile_counts, c.H, c.V, c.winding_h, c.winding_v);
}

}  // namespace

bool operator<(const LoopCensus& a, const LoopCensus& b) { return census_key(a) < census_key(b); }
bool operator==(const LoopCensus& a, const LoopCensus& b) { return census_key(a) == census_key(b); }

LoopCensus census(const TileGrid& g)
{
    if (g.M < 1 || g.N < 1 || static_cast<int>(g.tiles.size()) != g.M * g.N)
        throw std::invalid_argument("malformed tile grid");
    if (!g.edges_match()) throw std::invalid_argument("tile grid has a free end");

    LoopCensus c;
    for (int label : g.tiles) ++c.tile_counts[static_cast<std::size_t>(label - 1)];

    const int faces = g.M * g.N;
    std::vector<std::array<bool, 4>> seen(static_cast<std::size_t>(faces), std::array<bool, 4>{});
    auto face_of = [&](int x, int y) { return y * g.N + x; };

    for (int f0 = 0; f0 < faces; ++f0) {
        const auto& t0 = tile_shape(g.tiles[f0]);
        for (int s0 = 0; s0 < 4; ++s0) {
            if (!t0.occupied[s0] || seen[f0][s0]) continue;
            int f = f0, s = s0;
            long dx = 0, dy = 0;
            do {
                const auto& t = tile_shape(g.tiles[f]);
                const int out = t.partner(s);
                seen[f][s] = true;
                seen[f][out] = true;
                dx += kPosX[out] - kPosX[s];
                dy += kPosY[out] - kPosY[s];
                const int x = f % g.N, y = f / g.N;
                switch (out) {
                    case South: f = face_of(x, positive_mod(y - 1, g.M)); s = North; break;
                    case North: f = face_of(x, (y + 1) % g.M); s = South; break;
                    case West: f = face_of(positive_mod(x - 1, g.N), y); s = East; break;
                    default: f = face_of((x + 1) % g.N, y); s = West; break;
                }
            } while (f != f0 || s != s0);

            const long a = dx / (2L * g.N);
            const long b = dy / (2L * g.M);
            if (a * 2L * g.N != dx || b * 2L * g.M != dy) throw std::logic_error("loop did not close on the torus");
            if (a == 0 && b == 0) {
                ++c.n_beta;
                continue;
            }
            c.winding_h ^= static_cast<int>(std::labs(b) % 2);
            c.winding_v ^= static_cast<int>(std::labs(a) % 2);
            long i = a, j = b;
            if (j < 0 || (j == 0 && i < 0)) {
                i = -i;
                j = -j;
            }
            const long gg = gcd_conv(i, j);
            ++c.windings[{static_cast<int>(i / gg), static_cast<int>(j / gg)}];
        }
    }

    for (int x = 0; x < g.N; ++x)
        if (tile_shape(g.at(x, 1 % g.M)).occupied[South]) ++c.H;
    for (int y = 0; y < g.M; ++y)
        if (tile_shape(g.at(1 % g.N, y)).occupied[West]) ++c.V;
    return c;
}

int enumeration_limit(ModelKind kind) { return kind == ModelKind::Dense ? 36 : 16; }

namespace {

struct Enumerator {
    ModelKind kind;
    int M, N;
    TileGrid grid;

    bool fits(int k, int label) const
    {
        const int x = k % N, y = k / N;
        const auto& t = tile_shape(label);
        if (x > 0 && tile_shape(grid.tiles[k - 1]).occupied[East] != t.occupied[West]) return false;
        if (x == N - 1) {
            const bool west0 = (N == 1) ? t.occupied[West] : tile_shape(grid.tiles[k - x]).occupied[West];
            if (t.occupied[East] != west0) return false;
        }
        if (y > 0 && tile_shape(grid.tiles[k - N]).occupied[North] != t.occupied[South]) return false;
        if (y == M - 1) {
            const bool south0 = (M == 1) ? t.occupied[South] : tile_shape(grid.tiles[x]).occupied[South];
            if (t.occupied[North] != south0) return false;
        }
        return true;
    }

    template <class Emit>
    void run(int k, Emit& emit)
    {
        if (k == M * N) {
            emit(grid);
            return;
        }
        for (int label : tile_labels(kind)) {
            if (!fits(k, label)) continue;
            grid.tiles[k] = label;
            run(k + 1, emit);
        }
        grid.tiles[k] = 0;
    }
};

void check_size(ModelKind kind, int M, int N)
{
    if (M < 1 || N < 1) throw std::invalid_argument("lattice size must be positive");
    if (M * N > enumeration_limit(kind)) throw std::invalid_argument("lattice too large for enumeration");
}

}  // namespace

void enumerate_configs(ModelKind kind, int M, int N, const ConfigVisitor& visit)
{
    check_size(kind, M, N);
    Enumerator e{kind, M, N, TileGrid{M, N, std::vector<int>(static_cast<std::size_t>(M * N), 0)}};
    auto emit = [&](const TileGrid& g) { visit(g, census(g)); };
    e.run(0, emit);
}

CensusTable census_table(ModelKind kind, int M, int N, int workers)
{
    check_size(kind, M, N);
    const auto& labels = tile_labels(kind);
    const int nthreads = std::max(1, std::min<int>(resolve_workers(workers), static_cast<int>(labels.size())));
    std::vector<CensusTable> partial(static_cast<std::size_t>(nthreads));
    auto work = [&](int w) {
        Enumerator e{kind, M, N, TileGrid{M, N, std::vector<int>(static_cast<std::size_t>(M * N), 0)}};
        auto emit = [&](const TileGrid& g) { ++partial[static_cast<std::size_t>(w)][census(g)]; };
        for (std::size_t b = static_cast<std::size_t>(w); b < labels.size(); b += static_cast<std::size_t>(nthreads)) {
            if (!e.fits(0, labels[b])) continue;
            e.grid.tiles[0] = labels[b];
            e.run(1, emit);
        }
    };
    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nthreads; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    CensusTable table;
    for (auto& p : partial)
        for (auto& [k, n] : p) table[k] += n;
    return table;
}

int cluster_colourings(ModelKind kind) { return kind == ModelKind::Dense ? 1 : 2; }

std::vector<Sector> valid_sectors(ModelKind kind, int M, int N)
{
    if (kind == ModelKind::Dense) return {{N % 2, M % 2}};
    return {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
}

namespace {

void check_dense_sector(const ModelSpec& spec, int M, int N, const std::optional<Sector>& sector)
{
    if (spec.kind == ModelKind::Dense && sector && (sector->first != N % 2 || sector->second != M % 2))
        throw std::invalid_argument("dense sector must equal (N mod 2, M mod 2)");
}

template <class LoopWeight>
double evaluate(const ModelSpec& spec, const CensusTable& table, const std::optional<Sector>& sector,
                SectorRule rule, LoopWeight&& loop_weight)
{
    const auto rho = face_weights(spec);
    const double beta = spec.beta();
    const double colourings = cluster_colourings(spec.kind);
    double z = 0.0;
    for (const auto& [c, mult] : table) {
        if (sector) {
            const Sector got = rule == SectorRule::CutCrossings ? c.sector() : c.winding_sector();
            if (got != *sector) continue;
        }
        double w = colourings * static_cast<double>(mult) * std::pow(beta, c.n_beta) * loop_weight(c);
        for (std::size_t i = 0; i < 9 && w != 0.0; ++i)
            if (c.tile_counts[i] > 0) w *= std::pow(rho[i], c.tile_counts[i]);
        z += w;
    }
    return z;
}

}  // namespace

double lattice_Z(const ModelSpec& spec, const CensusTable& table, std::optional<Sector> sector, double alpha,
                 SectorRule rule)
{
    return evaluate(spec, table, sector, rule,
                    [alpha](const LoopCensus& c) { return std::pow(alpha, c.n_noncontractible()); });
}

double lattice_Z(const ModelSpec& spec, int M, int N, std::optional<Sector> sector, double alpha, SectorRule rule)
{
    check_dense_sector(spec, M, N, sector);
    return lattice_Z(spec, census_table(spec.kind, M, N), sector, alpha, rule);
}

double lattice_Z(const ModelSpec& spec, int M, int N, std::optional<Sector> sector,
                 const std::map<WindingClass, double>& alphas, SectorRule rule)
{
    check_dense_sector(spec, M, N, sector);
    return evaluate(spec, census_table(spec.kind, M, N), sector, rule, [&alphas](const LoopCensus& c) {
        double w = 1.0;
        for (const auto& [cls, k] : c.windings) {
            auto it = alphas.find(cls);
            w *= it == alphas.end() ? 0.0 : std::pow(it->second, k);
        }
        return w;
    });
}

}  // namespace torusloops
