#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "magres/cscale.hpp"
#include "magres/grid.hpp"

namespace magres {

enum class Model { landau, anharmonic, step, well, island };
std::string_view to_string(Model model);
Model model_from_string(std::string_view name);

/// Inputs of the real-part expansions. Only the fields of the chosen model
/// are read.
struct ExpansionParams {
  Model model = Model::landau;
  int n = 0;
  double h = 0.1;
  // anharmonic: exponent and the levels Lambda_0..Lambda_n at unit scale
  double gamma = 0.0;
  std::vector<double> lambda;
  // step: constants of the band minimum and the curvature data k0, k2 < 0
  double beta = 0.0, C1 = 0.0, C2 = 0.0, k0 = 0.0, k2 = -1.0;
  // well: field minimum and Hessian data
  double b0 = 1.0, detH = 1.0, trSqrtH = 2.0;
  // island: Dirichlet eigenvalues of the island
  std::vector<double> ell;
};

/// landau      (2n+1) h
/// anharmonic  Lambda_n h^(1 + gamma/(2+gamma))
/// step        beta h - k0 C1 h^(3/2) + (2n+1) sqrt|k2| C2 h^(7/4)
/// well        b0 h + (2n sqrt(detH) / b0 + trSqrtH^2 / b0) h^2
/// island      ell_n h^2
double expansion_real_part(const ExpansionParams& p);

struct ComparisonRow {
  Model model = Model::landau;
  int n = 0;
  double h = 0.0;
  double expansion = 0.0;
  double direct = 0.0;
  double diff = 0.0;   // direct - expansion
  double ratio = 0.0;  // |diff| of the previous row over |diff| of this row (NaN on the first)
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double observed_order = 0.0;  // slope of log|diff| against log h
  double fit_r2 = 0.0;
  double expected_order = 0.0;  // NaN when the model states no rate
};

/// Builds a report from matching (h, direct, expansion) samples; needs at
/// least three h values.
ComparisonReport compare(Model model, int n, const std::vector<double>& hs, const std::vector<double>& direct,
                         const std::vector<double>& expansion);

/// Zeros j_{nu,k} of J_nu with j <= x_max for nu = 0..nu_max, squared, merged
/// ascending without duplicates.
std::vector<double> bessel_zeros_squared(double x_max, int nu_max);

/// Dirichlet eigenvalues of the disk of radius rho1 from the radial solver,
/// cross-checked against Bessel zeros to 1e-6 relative.
std::vector<double> island_reference(double rho1, std::size_t n_max);

// Drivers producing direct values for compare().

ComparisonReport compare_well(double b0, int n, const std::vector<double>& hs, const RadialGrid& grid,
                              double detH = 1.0, double trSqrtH = 2.0);

/// Island auxiliary eigenvalue h^2 l_n(1/h) against ell_n h^2, with h = 1/b.
ComparisonReport compare_island(double rho1, double rho2, int n, const std::vector<double>& bs,
                                std::size_t n_points = 2000);

/// h^2 lambda_n(b = 1/h) of the full-plane anharmonic operator against
/// Lambda_n h^(1 + gamma/(2+gamma)).
ComparisonReport compare_anharmonic(double gamma, int n, const std::vector<double>& hs, const RadialGrid& grid);

/// Re z of the sector-0 resonance nearest (2n+1) h against (2n+1) h.
ComparisonReport compare_landau_resonances(const FieldProfile& profile, int n, const std::vector<double>& hs,
                                           const ResonanceSearch& base);

}  // namespace magres
