#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace torusloops {

enum class ModelKind { Dense, Dilute };

const char* to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

/// Model kind, coprime (p, p') with p < p', and the spectral parameter u.
struct ModelSpec {
    ModelKind kind = ModelKind::Dense;
    int p = 2;
    int pp = 3;
    double u = 0.0;

    static ModelSpec make(ModelKind kind, int p, int pp, double u);
    /// Same model at its isotropic point: lambda/2 (dense) or 3 lambda/2 (dilute).
    static ModelSpec isotropic(ModelKind kind, int p, int pp);

    double lambda() const;
    /// Contractible loop weight 2 cos(pi (p' - p)/p').
    double beta() const;
    double isotropic_u() const;
    /// Anisotropy angle pi u/lambda (dense) or pi u/(3 lambda) (dilute).
    double anisotropy_angle() const;
};

/// rho_1 .. rho_9 at index 0 .. 8.
std::array<double, 9> face_weights(const ModelSpec& spec);

/// Tile sides in the order bottom, right, top, left.
enum Side : int { South = 0, East = 1, North = 2, West = 3 };

struct TileShape {
    std::array<bool, 4> occupied{};
    /// Strand endpoints joined inside the face.
    std::vector<std::pair<int, int>> links;
    /// Side joined to `side` inside the face, or -1.
    int partner(int side) const;
};

/// Shape of tile 1..9.
const TileShape& tile_shape(int label);
/// Labels allowed for a model: 8, 9 (dense) or 1..9 (dilute).
const std::vector<int>& tile_labels(ModelKind kind);

/// M x N tile labels, row-major with row 0 at the bottom.
struct TileGrid {
    int M = 0;
    int N = 0;
    std::vector<int> tiles;

    int at(int x, int y) const { return tiles[static_cast<std::size_t>(y * N + x)]; }
    /// True when every strand meets a strand across each periodic edge.
    bool edges_match() const;
};

/// Primitive homology class (i, j) with j >= 0 and i > 0 when j = 0.
using WindingClass = std::pair<int, int>;

struct LoopCensus {
    int n_beta = 0;
    std::map<WindingClass, int> windings;
    std::array<int, 9> tile_counts{};
    /// Strands crossing the horizontal edge line under row 0 and the vertical line left of column 0.
    int H = 0;
    int V = 0;
    /// Parities of the summed raw windings (sum of j, sum of i) over non-contractible loops.
    int winding_h = 0;
    int winding_v = 0;

    int n_noncontractible() const;
    std::pair<int, int> sector() const { return {H % 2, V % 2}; }
    std::pair<int, int> winding_sector() const { return {winding_h, winding_v}; }

    friend bool operator<(const LoopCensus& a, const LoopCensus& b);
    friend bool operator==(const LoopCensus& a, const LoopCensus& b);
};

/// Traces every loop of a valid grid; throws std::invalid_argument on a free end.
LoopCensus census(const TileGrid& grid);

/// Largest M N accepted by the enumerator.
int enumeration_limit(ModelKind kind);

using ConfigVisitor = std::function<void(const TileGrid&, const LoopCensus&)>;

/// Every no-free-end configuration exactly once, in DFS order.
void enumerate_configs(ModelKind kind, int M, int N, const ConfigVisitor& visit);
inline void enumerate_configs(const ModelSpec& spec, int M, int N, const ConfigVisitor& visit)
{
    enumerate_configs(spec.kind, M, N, visit);
}

/// Multiplicity of each distinct census over all configurations.
using CensusTable = std::map<LoopCensus, long>;
CensusTable census_table(ModelKind kind, int M, int N, int workers = 0);

using Sector = std::pair<int, int>;

enum class SectorRule { CutCrossings, WindingParity };

/// Cluster colourings per loop configuration: 1 dense, 2 dilute (the two ways to fill the clusters the loops bound).
int cluster_colourings(ModelKind kind);

/// Each configuration is counted once per cluster colouring.
/// Homogeneous partition function sum over configurations of beta^{n_beta} alpha^{n_nc} prod rho_i^{n_i}.
double lattice_Z(const ModelSpec& spec, int M, int N, std::optional<Sector> sector, double alpha,
                 SectorRule rule = SectorRule::CutCrossings);
/// Inhomogeneous version with one weight per winding class; missing classes weigh 0.
double lattice_Z(const ModelSpec& spec, int M, int N, std::optional<Sector> sector,
                 const std::map<WindingClass, double>& alphas, SectorRule rule = SectorRule::CutCrossings);

/// Evaluation against a precomputed table.
double lattice_Z(const ModelSpec& spec, const CensusTable& table, std::optional<Sector> sector, double alpha,
                 SectorRule rule = SectorRule::CutCrossings);

/// Sectors (h, v) reachable for a model and size; dense admits only (N mod 2, M mod 2).
std::vector<Sector> valid_sectors(ModelKind kind, int M, int N);

}  // namespace torusloops
