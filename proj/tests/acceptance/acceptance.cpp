// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "magres/cscale.hpp"
#include "magres/errors.hpp"
#include "magres/levels.hpp"
#include "magres/numerics.hpp"
#include "magres/quasimode.hpp"
#include "magres/radial.hpp"
#include "magres/stepband.hpp"

using namespace magres;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail += (detail.empty() ? "" : "; ") + std::string(ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs a criterion, times it and turns exceptions into failures.
bool criterion(int id, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("exception: ") + e.what();
  }
  const double t = seconds_since(t0);
  o.require(t < budget_s, "runtime " + fmt(t, 3) + " s < " + fmt(budget_s) + " s");
  std::printf("criterion %d: %s - %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

FieldProfile unit_disk() {
  FieldSpec s;
  s.R0 = 1.0;
  return make_profile(s);
}

// Half-line Neumann de Gennes model by RK4 shooting (independent of the
// finite-difference step solver).
double shoot(double xi, double mu) {
  const double T = 7.0 + std::abs(xi), dt = 1e-3;
  double u = 1.0, v = 0.0;
  auto acc = [&](double t, double w) { return ((t + xi) * (t + xi) - mu) * w; };
  for (double t = 0.0; t < T; t += dt) {
    const double k1u = v, k1v = acc(t, u);
    const double k2u = v + 0.5 * dt * k1v, k2v = acc(t + 0.5 * dt, u + 0.5 * dt * k1u);
    const double k3u = v + 0.5 * dt * k2v, k3v = acc(t + 0.5 * dt, u + 0.5 * dt * k2u);
    const double k4u = v + dt * k3v, k4v = acc(t + dt, u + dt * k3u);
    u += dt / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    v += dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    if (std::abs(u) > 1e30) break;
  }
  return u;
}

double oracle_mu(double xi) {
  double lo = 0.3, hi = 1.2;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (shoot(xi, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void oracle_de_gennes(double& theta0, double& xi0) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = -1.5, b = -0.2, c = b - g * (b - a), d = a + g * (b - a);
  double fc = oracle_mu(c), fd = oracle_mu(d);
  while (b - a > 1e-6) {
    if (fc < fd) b = d, d = c, fd = fc, c = b - g * (b - a), fc = oracle_mu(c);
    else a = c, c = d, fc = fd, d = a + g * (b - a), fd = oracle_mu(d);
  }
  xi0 = 0.5 * (a + b);
  theta0 = oracle_mu(xi0);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Resonance runs shared by criteria 4 and 5.
struct DiskRuns {
  std::vector<double> hs{0.25, 0.2, 0.15};
  std::vector<ResonanceRun> runs;
  std::vector<double> seconds;
};

}  // namespace

int main() {
  int failed = 0;
  const auto plane = constant_plane_profile();

  // 1. Landau exactness.
  failed += !criterion(1, 10.0, [&](Outcome& o) {
    FiberSolveOptions opts{RadialGrid(20.0, 4000), Boundary::dirichlet_far, true, true};
    const auto sweep = sector_sweep(plane, 1.0, 3, SectorRange{-5, 5}, opts);
    double worst = 0.0;
    for (const auto& l : sweep)
      worst = std::max(worst, std::abs(l.value - landau_eigenvalue(static_cast<int>(l.index), l.m, 1.0)));
    o.require(worst <= 1e-5, "max |lambda - b(2n+1+|m|-m)| over m in [-5,5], n <= 2 = " + fmt(worst, 3));
    const auto merged = merge_distinct(sweep, 3);
    bool ok = merged.size() == 3;
    for (std::size_t n = 0; ok && n < 3; ++n) ok = std::abs(merged[n].value - (2.0 * n + 1.0)) <= 1e-5;
    o.require(ok, "distinct levels {1,3,5}");
  });

  // 2. Anharmonic scaling law.
  failed += !criterion(2, 30.0, [&](Outcome& o) {
    const RadialGrid g(8.0, 4000);
    FiberSolveOptions opts{g, Boundary::dirichlet_far, true, true};
    const auto p = anharmonic_profile(2.0);
    const auto range = default_sector_range(0);
    const double l1 = merge_distinct(sector_sweep(p, 1.0, 1, range, opts), 1)[0].value;
    const double l4 = merge_distinct(sector_sweep(p, 4.0, 1, range, opts), 1)[0].value;
    o.require(std::abs(l4 - 2.0 * l1) <= 1e-5, "lambda(b=4) - 2 lambda(b=1) = " + fmt(l4 - 2.0 * l1, 3));
    const auto probe = anharmonic_levels(1e-3, 0, std::nullopt, RadialGrid(20.0, 4000), true);
    o.require(std::abs(probe.levels[0].value - 1.0) <= 1e-2,
              "gamma=1e-3 lowest level " + fmt(probe.levels[0].value, 8));
  });

  // 3. Step constants.
  failed += !criterion(3, 120.0, [&](Outcome& o) {
    double theta0 = 0.0, xi0 = 0.0;
    oracle_de_gennes(theta0, xi0);
    const auto mn = minimize_band(StepParams::for_a(-1.0, 1.0, -4.0, 1.0, true));
    o.require(std::abs(mn.beta - theta0) <= 1e-4 && std::abs(mn.beta - 0.590106) <= 1e-4,
              "beta(-1) " + fmt(mn.beta, 8) + " vs oracle " + fmt(theta0, 8));
    o.require(std::abs(mn.zeta + std::sqrt(theta0)) <= 1e-3 && std::abs(mn.zeta - xi0) <= 1e-3,
              "zeta(-1) " + fmt(mn.zeta, 8) + " vs -sqrt(Theta0) " + fmt(-std::sqrt(theta0), 8));
    bool flat = false;
    try {
      minimize_band(StepParams::for_a(1.0, 1.0, -4.0, 1.0, true));
    } catch (const NumericalError& e) {
      flat = std::string(e.what()).find("flat") != std::string::npos;
    }
    o.require(flat, "a=1 raises the flat-band error");
    const auto base = spectral_constants(StepParams::for_a(-0.5));
    const auto fine = spectral_constants(StepParams::for_a(-0.5, 2.0));
    double worst = 0.0;
    for (auto [x, y] : {std::pair{base.beta, fine.beta}, {base.zeta, fine.zeta}, {base.C1, fine.C1}, {base.C2, fine.C2}})
      worst = std::max(worst, std::abs(x - y) / std::abs(x));
    o.require(worst <= 1e-4, "a=-0.5 constants under doubled resolution, max rel change " + fmt(worst, 3));
    bool positive = true;
    std::string list;
    for (double a : {-0.25, -0.5, -0.75}) {
      const auto c = a == -0.5 ? base : spectral_constants(StepParams::for_a(a));
      positive = positive && c.C1 > 0.0 && c.C2 > 0.0;
      list += " a=" + fmt(a) + ":(" + fmt(c.C1, 4) + "," + fmt(c.C2, 4) + ")";
    }
    o.require(positive, "C1, C2 > 0" + list);
  });

  // 4. Resonance existence and sign (sector m = 0).
  DiskRuns disk;
  const auto profile = unit_disk();
  failed += !criterion(4, 3.0 * 300.0, [&](Outcome& o) {
    for (double h : disk.hs) {
      const auto t0 = Clock::now();
      ResonanceSearch s;
      s.h = h;
      s.window = window_around(h, h);
      s.grid_n = 3000;
      disk.runs.push_back(find_resonances(profile, s));
      disk.seconds.push_back(seconds_since(t0));
      const auto& run = disk.runs.back();
      o.require(disk.seconds.back() < 300.0, "h=" + fmt(h) + " runtime " + fmt(disk.seconds.back(), 3) + " s");
      o.require(run.resonances.size() == 1, "h=" + fmt(h) + " count " + std::to_string(run.resonances.size()));
      if (run.resonances.size() != 1) continue;
      const auto& r = run.resonances[0];
      o.require(r.z.imag() < 0.0, "z=" + fmt(r.z.real(), 9) + fmt(r.z.imag(), 6) + "i");
      o.require(r.drift <= 1e-5 * (1.0 + std::abs(r.z)), "drift " + fmt(r.drift, 3));
      o.require(run.continuum_ratio >= 10.0, "continuum ratio " + fmt(run.continuum_ratio, 4));
    }
  });

  // 5. Exponential lifetime trend.
  failed += !criterion(5, 5.0, [&](Outcome& o) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < disk.runs.size(); ++i) {
      if (disk.runs[i].resonances.size() != 1) continue;
      x.push_back(1.0 / disk.hs[i]);
      y.push_back(std::log(std::abs(disk.runs[i].resonances[0].z.imag())));
    }
    if (x.size() != disk.hs.size()) {
      o.require(false, "needs one resonance per h");
      return;
    }
    o.require(y[1] < y[0] && y[2] < y[1], "log|Im z| decreasing as h decreases");
    const auto fit = num::fit_line(x, y);
    o.require(fit.slope < 0.0, "slope vs 1/h " + fmt(fit.slope, 5));
    o.require(fit.r2 >= 0.95, "R^2 " + fmt(fit.r2, 5));
    const double r0 = 1.0, c = -fit.slope / (r0 * r0);
    o.require(c > 0.0, "fitted c " + fmt(c, 5));
    bool bound = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double h = 1.0 / x[i];
      bound = bound && std::exp(y[i]) <= tz_window(h, h, c, r0).depth;
    }
    o.require(bound, "|Im z| <= h^-3 exp(-c r0^2 / h) at every h");
  });

  // 6. Quasimode residual law.
  failed += !criterion(6, 5.0, [&](Outcome& o) {
    std::vector<double> bs{9.0, 16.0, 25.0}, logs;
    bool defects = true;
    std::string list;
    for (double b : bs) {
      const auto q = build_quasimode(0, 0, b, 1.0, 0.2, RadialGrid(20.0, 4000));
      const auto r = quasimode_residual(q, plane);
      logs.push_back(std::log(r.residual));
      const double bound = std::exp(-0.64 * b / 2.0) * b * 1.5;
      defects = defects && q.norm_defect >= 0.0 && q.norm_defect <= bound;
      list += " b=" + fmt(b) + ":" + fmt(q.norm_defect, 3) + "<=" + fmt(bound, 3);
    }
    const auto fit = num::fit_line(bs, logs);
    o.require(fit.slope <= -0.11, "slope " + fmt(fit.slope, 5) + " <= -0.11");
    o.require(defects, "norm defects" + list);
  });

  // 7. Well expansion order.
  failed += !criterion(7, 60.0, [&](Outcome& o) {
    const auto rep = compare_well(1.0, 0, {0.1, 0.05, 0.025}, RadialGrid(4.0, 4000));
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
      o.require(rep.rows[i].ratio >= 4.0 && rep.rows[i].ratio <= 16.0,
                "halving ratio " + fmt(rep.rows[i].ratio, 4) + " in [4, 16]");
    o.detail += "; observed order " + fmt(rep.observed_order, 4) + " (diffs " + fmt(rep.rows[0].diff, 4) + ", " +
                fmt(rep.rows[1].diff, 4) + ", " + fmt(rep.rows[2].diff, 4) + ")";
  });

  // 8. Island convergence and decay.
  failed += !criterion(8, 60.0, [&](Outcome& o) {
    const double ell0 = island_reference(1.0, 0)[0];
    std::vector<double> err, bI;
    std::string list;
    for (double b : {50.0, 100.0, 200.0}) {
      const auto set = island_neumann_levels(1.0, 1.5, b, 0, std::nullopt, 2000, true);
      err.push_back(std::abs(set.levels[0].value - ell0));
      const auto g = island_ground_state(1.0, 1.5, b, 0, 2000);
      bI.push_back(b * verify_island_decay(g, b, 1.0));
      list += " b=" + fmt(b) + ":" + fmt(set.levels[0].value, 6) + "/" + fmt(bI.back(), 5);
      if (b == 100.0)
        o.require(err.back() <= 0.05 * ell0,
                  "l0(100) = " + fmt(set.levels[0].value, 6) + " within 5% of j01^2 = " + fmt(ell0, 8));
    }
    o.require(err[1] < err[0] && err[2] < err[1], "error decreasing over b = 50, 100, 200");
    // A bound M/b on I(b) makes b I(b) flat; allow a factor 2 over the grid.
    const double M = *std::max_element(bI.begin(), bI.end());
    o.require(M <= 2.0 * bI.front(), "b I(b) bounded over the grid (M = " + fmt(M, 5) + ", b I(50) = " +
                                          fmt(bI.front(), 5) + ")");
    o.detail += "; l0/bI:" + list;
  });

  // 9. TZ window arithmetic.
  failed += !criterion(9, 1.0, [&](Outcome& o) {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> uh(0.01, 0.5), uc(0.05, 2.0), ur(0.2, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double h = uh(rng), c = uc(rng), r0 = ur(rng);
      const auto w = tz_window(0.0, h, c, r0);
      const double width = std::pow(h, -2.0) * std::exp(-c * r0 * r0 / (2.0 * h));
      const double depth = std::pow(h, -3.0) * std::exp(-c * r0 * r0 / h);
      worst = std::max({worst, std::abs(w.half_width - width) / width, std::abs(w.depth - depth) / depth});
      o.require(w.R < w.S, "R < S");
    }
    o.require(worst <= 8.0 * std::numeric_limits<double>::epsilon(), "max rel deviation " + fmt(worst, 3));
    const double hs = tz_crossover(0.2, 1.0);
    const double at = tz_window(0.0, hs, 0.2, 1.0).half_width;
    o.require(std::abs(at - 1.0) < 1e-10, "crossover h* = " + fmt(hs, 8) + " (c=0.2, r0=1), w(h*) = " + fmt(at, 12));
  });

  // 10. Determinism through the CLI.
  failed += !criterion(10, 120.0, [&](Outcome& o) {
    const std::string cli = MAGRES_CLI, cfg = MAGRES_CONFIG_DIR;
    const std::vector<std::pair<std::string, std::string>> runs{
        {"spectrum", "spectrum --field " + cfg + "/anharmonic.json --b 1 --levels 3 --rmax 8"},
        {"band", "band --a -0.5"},
        {"resonances", "resonances --field " + cfg + "/disk.json --h 0.2"},
        {"quasimode", "quasimode --b 9,16,25"},
        {"compare", "compare --model island --b 50,100,200"}};
    for (const auto& [name, args] : runs) {
      const std::string a = "acc_" + name + "_a.csv", b = "acc_" + name + "_b.csv";
      const int c1 = shell(cli + " " + args + " --out " + a + " > /dev/null 2>&1");
      const int c2 = shell(cli + " rerun " + a + ".manifest.json --out " + b + " > /dev/null 2>&1");
      const auto x = slurp(a), y = slurp(b);
      o.require(c1 == 0 && c2 == 0 && !x.empty() && x == y, name + " rerun byte-identical");
    }
  });

  std::printf("%d criterion(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}
