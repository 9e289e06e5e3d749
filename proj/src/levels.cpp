#include "magres/levels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "magres/errors.hpp"
#include "magres/numerics.hpp"
#include "magres/radial.hpp"

namespace magres {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double expected_order_of(Model model) {
  switch (model) {
    case Model::well: return 3.0;
    case Model::step: return 2.0;
    default: return kNaN;
  }
}

void need(bool ok, const char* what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

std::string_view to_string(Model model) {
  switch (model) {
    case Model::landau: return "landau";
    case Model::anharmonic: return "anharmonic";
    case Model::step: return "step";
    case Model::well: return "well";
    case Model::island: return "island";
  }
  return "unknown";
}

Model model_from_string(std::string_view name) {
  if (name == "landau") return Model::landau;
  if (name == "anharmonic") return Model::anharmonic;
  if (name == "step") return Model::step;
  if (name == "well") return Model::well;
  if (name == "island") return Model::island;
  throw ValidationError("unknown model '" + std::string(name) + "' (expected landau, anharmonic, step, well or island)");
}

double expansion_real_part(const ExpansionParams& p) {
  need(p.h > 0.0, "expansion needs h > 0");
  need(p.n >= 0, "expansion needs n >= 0");
  const double h = p.h;
  const auto n = static_cast<std::size_t>(p.n);
  switch (p.model) {
    case Model::landau:
      return (2.0 * p.n + 1.0) * h;
    case Model::anharmonic:
      need(p.gamma >= 0.0, "anharmonic expansion needs gamma >= 0");
      need(p.lambda.size() > n, "anharmonic expansion needs Lambda_0..Lambda_n");
      return p.lambda[n] * std::pow(h, 1.0 + p.gamma / (2.0 + p.gamma));
    case Model::step:
      need(p.k2 < 0.0, "step expansion needs k2 < 0");
      need(p.C1 > 0.0 && p.C2 > 0.0, "step expansion needs C1, C2 > 0");
      return p.beta * h - p.k0 * p.C1 * std::pow(h, 1.5) +
             (2.0 * p.n + 1.0) * std::sqrt(-p.k2) * p.C2 * std::pow(h, 1.75);
    case Model::well:
      need(p.b0 > 0.0, "well expansion needs b0 > 0");
      need(p.detH > 0.0, "well expansion needs detH > 0");
      return p.b0 * h + (2.0 * p.n * std::sqrt(p.detH) / p.b0 + p.trSqrtH * p.trSqrtH / p.b0) * h * h;
    case Model::island:
      need(p.ell.size() > n, "island expansion needs ell_0..ell_n");
      return p.ell[n] * h * h;
  }
  throw ValidationError("unknown model");
}

ComparisonReport compare(Model model, int n, const std::vector<double>& hs, const std::vector<double>& direct,
                         const std::vector<double>& expansion) {
  if (hs.size() < 3) throw ValidationError("comparison needs at least three h values");
  if (direct.size() != hs.size() || expansion.size() != hs.size())
    throw ValidationError("comparison inputs differ in length");
  ComparisonReport rep;
  rep.expected_order = expected_order_of(model);
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    ComparisonRow row;
    row.model = model;
    row.n = n;
    row.h = hs[i];
    row.expansion = expansion[i];
    row.direct = direct[i];
    row.diff = direct[i] - expansion[i];
    row.ratio = i == 0 ? kNaN : std::abs(rep.rows.back().diff) / std::abs(row.diff);
    rep.rows.push_back(row);
    if (row.diff != 0.0) {
      lx.push_back(std::log(hs[i]));
      ly.push_back(std::log(std::abs(row.diff)));
    }
  }
  if (lx.size() >= 2) {
    const auto fit = num::fit_line(lx, ly);
    rep.observed_order = fit.slope;
    rep.fit_r2 = fit.r2;
  } else {
    rep.observed_order = kNaN;
    rep.fit_r2 = kNaN;
  }
  return rep;
}

std::vector<double> bessel_zeros_squared(double x_max, int nu_max) {
  std::vector<double> out;
  const double step = 0.05;
  for (int nu = 0; nu <= nu_max; ++nu) {
    auto J = [nu](double x) { return std::cyl_bessel_j(static_cast<double>(nu), x); };
    double x0 = nu == 0 ? step : static_cast<double>(nu);  // j_{nu,1} > nu
    double f0 = J(x0);
    for (double x1 = x0 + step; x1 <= x_max + step; x1 += step) {
      const double f1 = J(x1);
      if ((f0 < 0.0) != (f1 < 0.0)) {
        const double z = num::bisect(J, x0, x1, 1e-15);
        if (z <= x_max) out.push_back(z * z);
      }
      x0 = x1;
      f0 = f1;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) <= 1e-12 * b; }),
            out.end());
  return out;
}

std::vector<double> island_reference(double rho1, std::size_t n_max) {
  const auto levels = dirichlet_disk_levels(rho1, n_max);
  std::vector<double> ell;
  for (const auto& l : levels.levels) ell.push_back(l.value);

  const double x_max = rho1 * std::sqrt(ell.back()) * 1.05 + 1.0;
  const auto zeros = bessel_zeros_squared(x_max, 2 * static_cast<int>(n_max) + 8);
  if (zeros.size() < ell.size()) throw NumericalError("Bessel reference has fewer zeros than requested levels");
  for (std::size_t i = 0; i < ell.size(); ++i) {
    const double ref = zeros[i] / (rho1 * rho1);
    if (std::abs(ell[i] - ref) > 1e-6 * ref)
      throw NumericalError("Dirichlet level " + std::to_string(i) + " = " + std::to_string(ell[i]) +
                           " disagrees with the Bessel zero reference " + std::to_string(ref));
  }
  return ell;
}

ComparisonReport compare_well(double b0, int n, const std::vector<double>& hs, const RadialGrid& grid, double detH,
                              double trSqrtH) {
  std::vector<double> direct, expansion;
  for (double h : hs) {
    const auto set = well_levels(b0, h, static_cast<std::size_t>(n), std::nullopt, grid, true);
    direct.push_back(set.levels[static_cast<std::size_t>(n)].value);
    ExpansionParams p;
    p.model = Model::well;
    p.n = n;
    p.h = h;
    p.b0 = b0;
    p.detH = detH;
    p.trSqrtH = trSqrtH;
    expansion.push_back(expansion_real_part(p));
  }
  return compare(Model::well, n, hs, direct, expansion);
}

ComparisonReport compare_island(double rho1, double rho2, int n, const std::vector<double>& bs, std::size_t n_points) {
  const auto ell = island_reference(rho1, static_cast<std::size_t>(n));
  std::vector<double> hs, direct, expansion;
  for (double b : bs) {
    if (!(b > 0.0)) throw ValidationError("island comparison needs b > 0");
    const double h = 1.0 / b;
    const auto set = island_neumann_levels(rho1, rho2, b, static_cast<std::size_t>(n), std::nullopt, n_points, true);
    hs.push_back(h);
    direct.push_back(set.levels[static_cast<std::size_t>(n)].value * h * h);
    ExpansionParams p;
    p.model = Model::island;
    p.n = n;
    p.h = h;
    p.ell = ell;
    expansion.push_back(expansion_real_part(p));
  }
  return compare(Model::island, n, hs, direct, expansion);
}

ComparisonReport compare_anharmonic(double gamma, int n, const std::vector<double>& hs, const RadialGrid& grid) {
  const auto unit = anharmonic_levels(gamma, static_cast<std::size_t>(n), std::nullopt, grid, true);
  std::vector<double> lambda;
  for (const auto& l : unit.levels) lambda.push_back(l.value);
  const auto profile = anharmonic_profile(gamma);
  std::vector<double> direct, expansion;
  for (double h : hs) {
    if (!(h > 0.0)) throw ValidationError("anharmonic comparison needs h > 0");
    FiberSolveOptions opts{grid, Boundary::dirichlet_far, true, true};
    const auto sweep = sector_sweep(profile, 1.0 / h, static_cast<std::size_t>(n) + 1, unit.range, opts);
    const auto merged = merge_distinct(sweep, static_cast<std::size_t>(n) + 1);
    if (merged.size() <= static_cast<std::size_t>(n)) throw TruncationError("not enough anharmonic levels");
    direct.push_back(merged[static_cast<std::size_t>(n)].value * h * h);
    ExpansionParams p;
    p.model = Model::anharmonic;
    p.n = n;
    p.h = h;
    p.gamma = gamma;
    p.lambda = lambda;
    expansion.push_back(expansion_real_part(p));
  }
  return compare(Model::anharmonic, n, hs, direct, expansion);
}

ComparisonReport compare_landau_resonances(const FieldProfile& profile, int n, const std::vector<double>& hs,
                                           const ResonanceSearch& base) {
  std::vector<double> direct, expansion;
  for (double h : hs) {
    const double target = (2.0 * n + 1.0) * h;
    ResonanceSearch s = base;
    s.h = h;
    s.sectors = {0, 0};
    s.window = window_around(target, h);
    const auto run = find_resonances(profile, s);
    if (run.resonances.empty())
      throw NumericalError("no resonance found near Re z = " + std::to_string(target) + " at h = " + std::to_string(h));
    const auto best = std::min_element(run.resonances.begin(), run.resonances.end(), [&](const auto& x, const auto& y) {
      return std::abs(x.z.real() - target) < std::abs(y.z.real() - target);
    });
    direct.push_back(best->z.real());
    expansion.push_back(target);
  }
  return compare(Model::landau, n, hs, direct, expansion);
}

}  // namespace magres
