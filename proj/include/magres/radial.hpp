#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "magres/field.hpp"
#include "magres/grid.hpp"

namespace magres {

enum class Boundary { dirichlet_far, neumann_far };

/// Radial fiber of the magnetic Laplacian in angular sector m at field scale b:
///   -u'' - u'/r + (m/r - b a(r))^2 u.
/// Discretized in flux form on the staggered grid and symmetrized with
/// v = sqrt(r) u, which gives a real symmetric tridiagonal matrix. The
/// vanishing half-node radius at r = 0 plays the role of the regularity
/// condition, so no explicit -1/(4r^2) term appears.
struct FiberOperator {
  int m = 0;
  double b = 1.0;
  Boundary boundary = Boundary::dirichlet_far;
  RadialGrid grid{1.0, RadialGrid::min_points};
  std::vector<double> potential;  // (m/r_j - b a(r_j))^2
  std::vector<double> diag;
  std::vector<double> off;
};

/// If `window` is given the far boundary must be safe for it:
/// V_m(r_max) >= window + 10, else TruncationError.
FiberOperator assemble_fiber(const FieldProfile& profile, int m, double b, const RadialGrid& grid,
                             Boundary boundary = Boundary::dirichlet_far,
                             std::optional<double> window = std::nullopt);

/// Eigenpairs of a fiber. Vectors are grid functions u_j normalized by
/// sum u_j^2 r_j dr = 1, sign fixed so the largest component is positive.
struct EigenResult {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
  RadialGrid grid{1.0, RadialGrid::min_points};
  int m = 0;
  double b = 1.0;
  Boundary boundary = Boundary::dirichlet_far;
  std::vector<double> potential;
};

EigenResult eigs_lowest(const FiberOperator& op, std::size_t k, bool want_vectors = true);

struct FiberSolveOptions {
  RadialGrid grid{20.0, 4000};
  Boundary boundary = Boundary::dirichlet_far;
  /// Combine N and N/2 as (4 fine - coarse) / 3.
  bool richardson = false;
  /// Applies the far-boundary safety rule a posteriori (truncated full-plane
  /// problems only; physical walls skip it).
  bool check_truncation = true;
};

/// Lowest k eigenvalues of one sector.
std::vector<double> fiber_levels(const FieldProfile& profile, int m, double b, std::size_t k,
                                 const FiberSolveOptions& opts);

struct SectorRange {
  int lo = 0;
  int hi = 0;
};

/// Default sector range [-2 n_max - 8, 2 n_max + 8].
SectorRange default_sector_range(std::size_t n_max);

struct Level {
  double value = 0.0;
  int m = 0;
  std::size_t index = 0;  // position inside its sector
};

/// Lowest k levels of every sector in the range, ordered by (value, m).
/// Sectors are solved in parallel; the merge is deterministic.
std::vector<Level> sector_sweep(const FieldProfile& profile, double b, std::size_t k, SectorRange range,
                                const FiberSolveOptions& opts);

/// Distinct levels: values within 1e-8 (1 + |value|) of the previous kept
/// level are treated as the same level.
std::vector<Level> merge_distinct(std::vector<Level> levels, std::size_t count);

/// Merged levels plus the data of the a-posteriori sector check.
struct LevelSet {
  std::vector<Level> levels;
  SectorRange range;
  double boundary_sector_min = 0.0;  // lowest value found in sectors lo and hi
};

/// Lowest n_max + 1 distinct anharmonic Landau levels (field r^gamma, b = 1).
/// Throws TruncationError when a boundary sector of the range reaches below
/// the returned maximum.
LevelSet anharmonic_levels(double gamma, std::size_t n_max, std::optional<SectorRange> range,
                           const RadialGrid& grid, bool richardson = true);

/// Semiclassical levels h^2 * lambda(b = 1/h) of the radial well B = b0 + r^2.
LevelSet well_levels(double b0, double h, std::size_t n_max, std::optional<SectorRange> range,
                     const RadialGrid& grid, bool richardson = true);

/// Auxiliary island problem on the disk of radius rho2 with magnetic
/// Neumann condition: field 0 on [0, rho1), 1 on [rho1, rho2], scale b >= 0.
LevelSet island_neumann_levels(double rho1, double rho2, double b, std::size_t n_max,
                               std::optional<SectorRange> range, std::size_t n_points = 2000,
                               bool richardson = true);

/// Lowest island eigenpair with vectors, for the decay and residual checks.
EigenResult island_ground_state(double rho1, double rho2, double b, int m, std::size_t n_points = 2000);

/// Dirichlet Laplacian of the disk of radius rho1, all sectors merged.
LevelSet dirichlet_disk_levels(double rho1, std::size_t n_max, std::size_t n_points = 2000,
                               bool richardson = true);

/// Full-plane profiles used by the level drivers.
FieldProfile anharmonic_profile(double gamma);
FieldProfile well_profile(double b0);
FieldProfile constant_plane_profile();

/// Weighted tail integral int (|u'|^2 + |u|^2) exp(2 c0 r^(2+gamma)) r dr of
/// eigenvector `index`, evaluated in log space.
double ah_weighted_integral(const EigenResult& result, double gamma, double c0, std::size_t index = 0);

struct DecayCheck {
  double integral = 0.0;
  double integral_doubled = 0.0;  // same sector, r_max and N doubled
  double growth = 0.0;            // relative change
  bool flagged = false;           // growth above 10 %
};

/// Re-solves the sector of `result` (anharmonic field at scale result.b) on
/// the doubled domain and compares the weighted integrals.
DecayCheck verify_ah_decay(const EigenResult& result, double gamma, double c0, std::size_t index = 0);

/// I(b) = int_{rho1 < r} (|u|^2 + |u'|^2 + (m/r - b a)^2 |u|^2) w(r) r dr with
/// w = exp(sqrt(b) (r - rho1) / 2), or w = 1 when `weighted` is false.
double verify_island_decay(const EigenResult& result, double b, double rho1, bool weighted = true);

}  // namespace magres
