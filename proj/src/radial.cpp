#include "magres/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "magres/errors.hpp"
#include "magres/parallel.hpp"
#include "magres/tridiag.hpp"

namespace magres {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sector_potential(const FieldProfile& profile, int m, double b, double r) {
  const double w = static_cast<double>(m) / r - b * profile.potential(r);
  return w * w;
}

void check_far_boundary(double v_far, double window, int m, double r_max) {
  if (v_far < window + 10.0)
    throw TruncationError("far boundary unsafe in sector m=" + std::to_string(m) + ": V(r_max=" +
                          std::to_string(r_max) + ") = " + std::to_string(v_far) + " < window + 10 = " +
                          std::to_string(window + 10.0));
}

// x^2 exp(log_weight) without overflowing when x is tiny and the weight huge.
double weighted_square(double x, double log_weight) {
  if (x == 0.0) return 0.0;
  return std::exp(2.0 * std::log(std::abs(x)) + log_weight);
}

LevelSet checked_levels(const FieldProfile& profile, double b, std::size_t n_max, SectorRange range,
                        const FiberSolveOptions& opts, double scale) {
  if (range.lo > range.hi) throw ValidationError("sector range is empty");
  auto all = sector_sweep(profile, b, n_max + 1, range, opts);
  LevelSet out;
  out.range = range;
  out.levels = merge_distinct(all, n_max + 1);
  if (out.levels.size() < n_max + 1) throw TruncationError("sector range too narrow to hold the requested levels");

  out.boundary_sector_min = kInf;
  for (const auto& l : all)
    if (l.m == range.lo || l.m == range.hi) out.boundary_sector_min = std::min(out.boundary_sector_min, l.value);
  const double top = out.levels.back().value;
  if (range.lo != range.hi && !(out.boundary_sector_min > top))
    throw TruncationError("boundary sector contributes a level (" + std::to_string(out.boundary_sector_min * scale) +
                          ") below the returned maximum (" + std::to_string(top * scale) +
                          "); widen the sector range");
  for (auto& l : out.levels) l.value *= scale;
  out.boundary_sector_min *= scale;
  return out;
}

// b = 0 is admitted here for the zero-field auxiliary problems.
FiberOperator build_fiber(const FieldProfile& profile, int m, double b, const RadialGrid& grid, Boundary boundary,
                          std::optional<double> window) {
  if (!(b >= 0.0) || !std::isfinite(b)) throw ValidationError("field scale b must be finite and >= 0");
  const std::size_t n = grid.size();
  const double dr = grid.dr();
  const double dr2 = dr * dr;

  FiberOperator op;
  op.m = m;
  op.b = b;
  op.boundary = boundary;
  op.grid = grid;
  op.potential.resize(n);
  op.diag.resize(n);
  op.off.resize(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = grid.node(j);
    const double rl = grid.half(j);
    double rr = grid.half(j + 1);
    op.potential[j] = sector_potential(profile, m, b, r);
    if (!std::isfinite(op.potential[j])) throw NumericalError("fiber potential is not finite at r=" + std::to_string(r));
    if (j + 1 == n) rr = boundary == Boundary::dirichlet_far ? 2.0 * rr : 0.0;
    op.diag[j] = (rl + rr) / (r * dr2) + op.potential[j];
    if (j + 1 < n) op.off[j] = -grid.half(j + 1) / (dr2 * std::sqrt(r * grid.node(j + 1)));
  }
  if (window && boundary == Boundary::dirichlet_far)
    check_far_boundary(sector_potential(profile, m, b, grid.r_max()), *window, m, grid.r_max());
  return op;
}

}  // namespace

FiberOperator assemble_fiber(const FieldProfile& profile, int m, double b, const RadialGrid& grid,
                             Boundary boundary, std::optional<double> window) {
  if (!(b > 0.0)) throw ValidationError("field scale b must be positive, got " + std::to_string(b));
  return build_fiber(profile, m, b, grid, boundary, window);
}

EigenResult eigs_lowest(const FiberOperator& op, std::size_t k, bool want_vectors) {
  if (k == 0) throw ValidationError("eigs_lowest: k must be at least 1");
  const auto eig = sym_tridiag_lowest(op.diag, op.off, k, want_vectors);
  EigenResult res;
  res.values = eig.values;
  res.grid = op.grid;
  res.m = op.m;
  res.b = op.b;
  res.boundary = op.boundary;
  res.potential = op.potential;
  if (!want_vectors) return res;

  const std::size_t n = op.grid.size();
  const double dr = op.grid.dr();
  for (std::size_t i = 0; i < k; ++i) {
    auto v = eig.vector(i);
    std::vector<double> u(n);
    std::size_t peak = 0;
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = v[j] / std::sqrt(op.grid.node(j) * dr);
      if (std::abs(u[j]) > std::abs(u[peak])) peak = j;
    }
    if (u[peak] < 0.0)
      for (auto& x : u) x = -x;
    res.vectors.push_back(std::move(u));
  }
  return res;
}

std::vector<double> fiber_levels(const FieldProfile& profile, int m, double b, std::size_t k,
                                 const FiberSolveOptions& opts) {
  auto solve = [&](const RadialGrid& g) {
    return eigs_lowest(build_fiber(profile, m, b, g, opts.boundary, std::nullopt), k, false).values;
  };
  auto values = solve(opts.grid);
  if (opts.check_truncation && opts.boundary == Boundary::dirichlet_far)
    check_far_boundary(sector_potential(profile, m, b, opts.grid.r_max()), values.back(), m, opts.grid.r_max());
  if (opts.richardson) {
    const auto coarse = solve(opts.grid.coarsened());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = (4.0 * values[i] - coarse[i]) / 3.0;
  }
  return values;
}

SectorRange default_sector_range(std::size_t n_max) {
  const int w = 2 * static_cast<int>(n_max) + 8;
  return {-w, w};
}

std::vector<Level> sector_sweep(const FieldProfile& profile, double b, std::size_t k, SectorRange range,
                                const FiberSolveOptions& opts) {
  if (range.lo > range.hi) throw ValidationError("sector range is empty");
  const std::size_t count = static_cast<std::size_t>(range.hi - range.lo + 1);
  auto per_sector = parallel_map(count, [&](std::size_t i) {
    return fiber_levels(profile, range.lo + static_cast<int>(i), b, k, opts);
  });
  std::vector<Level> out;
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t n = 0; n < per_sector[i].size(); ++n)
      out.push_back({per_sector[i][n], range.lo + static_cast<int>(i), n});
  std::sort(out.begin(), out.end(), [](const Level& x, const Level& y) {
    return x.value != y.value ? x.value < y.value : (x.m != y.m ? x.m < y.m : x.index < y.index);
  });
  return out;
}

std::vector<Level> merge_distinct(std::vector<Level> levels, std::size_t count) {
  std::sort(levels.begin(), levels.end(), [](const Level& x, const Level& y) {
    return x.value != y.value ? x.value < y.value : x.m < y.m;
  });
  std::vector<Level> out;
  for (const auto& l : levels) {
    if (!out.empty() && std::abs(l.value - out.back().value) <= 1e-8 * (1.0 + std::abs(l.value))) continue;
    out.push_back(l);
    if (out.size() == count) break;
  }
  return out;
}

FieldProfile anharmonic_profile(double gamma) {
  if (!(gamma >= 0.0)) throw ValidationError("gamma must be >= 0");
  return FieldProfile::from_pieces({{0.0, kInf, {{1.0, gamma}}}});
}

FieldProfile well_profile(double b0) {
  if (!(b0 > 0.0)) throw ValidationError("b0 must be positive");
  return FieldProfile::from_pieces({{0.0, kInf, {{b0, 0.0}, {1.0, 2.0}}}});
}

FieldProfile constant_plane_profile() { return FieldProfile::from_pieces({{0.0, kInf, {{1.0, 0.0}}}}); }

LevelSet anharmonic_levels(double gamma, std::size_t n_max, std::optional<SectorRange> range,
                           const RadialGrid& grid, bool richardson) {
  FiberSolveOptions opts{grid, Boundary::dirichlet_far, richardson, true};
  return checked_levels(anharmonic_profile(gamma), 1.0, n_max, range.value_or(default_sector_range(n_max)), opts,
                        1.0);
}

LevelSet well_levels(double b0, double h, std::size_t n_max, std::optional<SectorRange> range,
                     const RadialGrid& grid, bool richardson) {
  if (!(h > 0.0)) throw ValidationError("h must be positive");
  FiberSolveOptions opts{grid, Boundary::dirichlet_far, richardson, true};
  return checked_levels(well_profile(b0), 1.0 / h, n_max, range.value_or(default_sector_range(n_max)), opts, h * h);
}

LevelSet island_neumann_levels(double rho1, double rho2, double b, std::size_t n_max,
                               std::optional<SectorRange> range, std::size_t n_points, bool richardson) {
  if (!(rho1 > 0.0) || !(rho1 < rho2)) throw ValidationError("island radii must satisfy 0 < rho1 < rho2");
  if (!(b >= 0.0)) throw ValidationError("island field scale b must be >= 0");
  const auto profile = FieldProfile::from_pieces({{rho1, rho2, {{1.0, 0.0}}}});
  FiberSolveOptions opts{RadialGrid(rho2, n_points), Boundary::neumann_far, richardson, false};
  return checked_levels(profile, b, n_max, range.value_or(default_sector_range(n_max)), opts, 1.0);
}

EigenResult island_ground_state(double rho1, double rho2, double b, int m, std::size_t n_points) {
  if (!(rho1 > 0.0) || !(rho1 < rho2)) throw ValidationError("island radii must satisfy 0 < rho1 < rho2");
  const auto profile = FieldProfile::from_pieces({{rho1, rho2, {{1.0, 0.0}}}});
  return eigs_lowest(build_fiber(profile, m, b, RadialGrid(rho2, n_points), Boundary::neumann_far, std::nullopt), 1);
}

LevelSet dirichlet_disk_levels(double rho1, std::size_t n_max, std::size_t n_points, bool richardson) {
  if (!(rho1 > 0.0)) throw ValidationError("disk radius must be positive");
  FiberSolveOptions opts{RadialGrid(rho1, n_points), Boundary::dirichlet_far, richardson, false};
  return checked_levels(FieldProfile{}, 0.0, n_max, default_sector_range(n_max), opts, 1.0);
}

namespace {

// log|u_j| and sign(u_j) of eigenvector `index`. Beyond the point where the
// stored vector drops below 1e-6 of its peak the components are rebuilt by
// running the three-term recurrence inward from the far end; inward is the
// stable direction for a solution that decays outward, and the log form
// survives the underflow a plain vector would hit.
void log_components(const EigenResult& result, std::size_t index, std::vector<double>& lg, std::vector<double>& sg) {
  const auto& u = result.vectors[index];
  const auto& g = result.grid;
  const std::size_t n = g.size();
  const double dr2 = g.dr() * g.dr();
  const double lambda = result.values[index];
  lg.assign(n, -kInf);
  sg.assign(n, 1.0);

  std::size_t peak = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (std::abs(u[j]) > std::abs(u[peak])) peak = j;
  std::size_t junction = peak;
  for (std::size_t j = peak; j < n; ++j)
    if (std::abs(u[j]) >= 1e-6 * std::abs(u[peak])) junction = j;

  for (std::size_t j = 0; j <= junction; ++j) {
    if (u[j] != 0.0) lg[j] = std::log(std::abs(u[j]));
    sg[j] = u[j] < 0.0 ? -1.0 : 1.0;
  }
  if (junction + 2 >= n) return;

  // rho_j = u_j / u_{j+1}, from u_{j-1} = ((lambda - A_jj) u_j - A_{j,j+1} u_{j+1}) / A_{j,j-1}.
  auto a_diag = [&](std::size_t j) {
    double right = g.half(j + 1);
    if (j + 1 == n) right = result.boundary == Boundary::dirichlet_far ? 2.0 * right : 0.0;
    return (g.half(j) + right) / (g.node(j) * dr2) + result.potential[j];
  };
  auto a_lo = [&](std::size_t j) { return -g.half(j) / (g.node(j) * dr2); };
  auto a_hi = [&](std::size_t j) { return -g.half(j + 1) / (g.node(j) * dr2); };

  std::vector<double> log_rel(n, 0.0), sign_rel(n, 1.0);  // relative to u_{n-1}
  double inv_rho = 0.0;                                  // u_{j+1} / u_j at the current j
  for (std::size_t j = n - 1; j > junction; --j) {
    const double rho = ((lambda - a_diag(j)) - a_hi(j) * inv_rho) / a_lo(j);  // u_{j-1} / u_j
    log_rel[j - 1] = log_rel[j] + std::log(std::abs(rho));
    sign_rel[j - 1] = sign_rel[j] * (rho < 0.0 ? -1.0 : 1.0);
    inv_rho = 1.0 / rho;
  }
  const double shift = lg[junction] - log_rel[junction];
  const double flip = sg[junction] * sign_rel[junction];
  for (std::size_t j = junction + 1; j < n; ++j) {
    lg[j] = log_rel[j] + shift;
    sg[j] = sign_rel[j] * flip;
  }
}

double log_abs_difference(double la, double sa, double lb, double sb) {
  const double top = std::max(la, lb);
  if (top == -kInf) return -kInf;
  const double d = std::abs(sa * std::exp(la - top) - sb * std::exp(lb - top));
  return d == 0.0 ? -kInf : top + std::log(d);
}

}  // namespace

double ah_weighted_integral(const EigenResult& result, double gamma, double c0, std::size_t index) {
  if (index >= result.vectors.size()) throw ValidationError("eigenvector index out of range");
  std::vector<double> lg, sg;
  log_components(result, index, lg, sg);
  const auto& g = result.grid;
  const double dr = g.dr();
  const double p = 2.0 + gamma;
  const std::size_t n = g.size();
  auto term = [&](double log_abs, double r, double cell) {
    return log_abs == -kInf ? 0.0 : std::exp(2.0 * log_abs + 2.0 * c0 * std::pow(r, p) + std::log(r * cell));
  };
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) total += term(lg[j], g.node(j), dr);
  for (std::size_t k = 1; k < n; ++k)
    total += term(log_abs_difference(lg[k], sg[k], lg[k - 1], sg[k - 1]) - std::log(dr), g.half(k), dr);
  if (result.boundary == Boundary::dirichlet_far)
    total += term(std::log(2.0) + lg[n - 1] - std::log(dr), g.r_max(), 0.5 * dr);
  return total;
}

DecayCheck verify_ah_decay(const EigenResult& result, double gamma, double c0, std::size_t index) {
  if (!(c0 >= 0.0)) throw ValidationError("decay rate c0 must be >= 0");
  DecayCheck out;
  out.integral = ah_weighted_integral(result, gamma, c0, index);
  const RadialGrid doubled(2.0 * result.grid.r_max(), 2 * result.grid.size());
  const auto op = assemble_fiber(anharmonic_profile(gamma), result.m, result.b, doubled, result.boundary);
  out.integral_doubled = ah_weighted_integral(eigs_lowest(op, index + 1), gamma, c0, index);
  out.growth = std::abs(out.integral_doubled - out.integral) / out.integral;
  out.flagged = !std::isfinite(out.integral_doubled) || out.growth > 0.10;
  return out;
}

double verify_island_decay(const EigenResult& result, double b, double rho1, bool weighted) {
  if (result.vectors.empty()) throw ValidationError("island decay needs an eigenvector");
  const auto& u = result.vectors.front();
  const auto& g = result.grid;
  const double dr = g.dr();
  const double sb = std::sqrt(b);
  auto log_w = [&](double r) { return weighted ? 0.5 * sb * (r - rho1) : 0.0; };
  double total = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double r = g.node(j);
    if (r <= rho1) continue;
    total += (1.0 + result.potential[j]) * weighted_square(u[j], log_w(r) + std::log(r * dr));
  }
  for (std::size_t k = 1; k < g.size(); ++k) {
    const double r = g.half(k);
    if (r <= rho1) continue;
    total += weighted_square((u[k] - u[k - 1]) / dr, log_w(r) + std::log(r * dr));
  }
  return total;
}

}  // namespace magres
