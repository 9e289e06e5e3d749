#include "magres/quasimode.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "magres/errors.hpp"
#include "magres/numerics.hpp"

namespace magres {

double laguerre(int n, int k, double x) {
  if (n < 0 || k < 0) throw ValidationError("laguerre: n and k must be non-negative");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + k - x;
  for (int j = 1; j < n; ++j) {
    const double next = ((2.0 * j + 1.0 + k - x) * cur - (j + k) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

double landau_log_norm(int n, int k, double b) {
  return 0.5 * ((k + 1.0) * std::log(b) + std::lgamma(n + 1.0) - std::log(2.0 * std::numbers::pi) -
                k * std::log(2.0) - std::lgamma(n + k + 1.0));
}

void check_landau_args(int n, double b, double r) {
  if (n < 0) throw ValidationError("Landau index n must be >= 0");
  if (!(b > 0.0)) throw ValidationError("Landau field b must be positive");
  if (!(r >= 0.0)) throw ValidationError("Landau radius must be >= 0");
}

}  // namespace

double landau_radial(int n, int m, double b, double r) {
  check_landau_args(n, b, r);
  const int k = std::abs(m);
  const double c = std::exp(landau_log_norm(n, k, b));
  return c * std::pow(r, k) * std::exp(-0.25 * b * r * r) * laguerre(n, k, 0.5 * b * r * r);
}

double landau_radial_derivative(int n, int m, double b, double r) {
  check_landau_args(n, b, r);
  const int k = std::abs(m);
  const double c = std::exp(landau_log_norm(n, k, b));
  const double x = 0.5 * b * r * r;
  const double L = laguerre(n, k, x);
  const double dL = n > 0 ? -laguerre(n - 1, k + 1, x) : 0.0;
  const double rk = std::pow(r, k);
  double d = (-0.5 * b * r * L + b * r * dL) * rk;
  if (k > 0) d += k * std::pow(r, k - 1) * L;
  return c * std::exp(-0.25 * b * r * r) * d;
}

double landau_eigenvalue(int n, int m, double b) { return b * (2.0 * n + 1.0 + std::abs(m) - m); }

Cutoff::Cutoff(double r0, double delta) : r0_(r0), delta_(delta) {
  if (!(r0 > 0.0)) throw ValidationError("cutoff radius r0 must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("cutoff shoulder delta must lie in (0, 1)");
}

double Cutoff::value(double r) const {
  if (r <= inner()) return 1.0;
  if (r >= r0_) return 0.0;
  const double s = (r - inner()) / (delta_ * r0_);
  return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double Cutoff::d1(double r) const {
  if (r <= inner() || r >= r0_) return 0.0;
  const double w = delta_ * r0_;
  const double s = (r - inner()) / w;
  return -30.0 * s * s * (1.0 - s) * (1.0 - s) / w;
}

double Cutoff::d2(double r) const {
  if (r <= inner() || r >= r0_) return 0.0;
  const double w = delta_ * r0_;
  const double s = (r - inner()) / w;
  return -60.0 * s * (1.0 - s) * (1.0 - 2.0 * s) / (w * w);
}

Quasimode build_quasimode(int n, int m, double b, double r0, double delta, const RadialGrid& grid) {
  Quasimode q;
  q.n = n;
  q.m = m;
  q.b = b;
  q.cutoff = Cutoff(r0, delta);
  if (delta * r0 / grid.dr() < 16.0)
    throw ValidationError("cutoff shoulder under-resolved: delta r0 / dr = " + std::to_string(delta * r0 / grid.dr()) +
                          " < 16");
  if (r0 > grid.r_max()) throw ValidationError("cutoff radius exceeds the grid");
  q.values.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double r = grid.node(j);
    q.values[j] = r < r0 ? q.cutoff.value(r) * landau_radial(n, m, b, r) : 0.0;
  }

  // Mass removed by the cutoff: 2 pi int (1 - chi^2) R^2 r dr.
  const double spread = std::sqrt((2.0 * n + std::abs(m) + 1.0) / b);
  const double upper = r0 + 20.0 * spread + 20.0 / std::sqrt(b);
  auto removed = [&](double r) {
    const double c = q.cutoff.value(r);
    const double R = landau_radial(n, m, b, r);
    return 2.0 * std::numbers::pi * (1.0 - c * c) * R * R * r;
  };
  const double lost = num::integrate(removed, q.cutoff.inner(), r0, 64) + num::integrate(removed, r0, upper, 256);
  q.norm = std::sqrt(1.0 - lost);
  q.norm_defect = lost / (1.0 + q.norm);
  return q;
}

QuasimodeResidual quasimode_residual(const Quasimode& q, const FieldProfile& profile) {
  const double r0 = q.cutoff.r0();
  for (int i = 0; i <= 256; ++i) {
    const double r = r0 * (i + 0.5) / 257.5;
    if (std::abs(profile.field(r) - 1.0) > 1e-12)
      throw ValidationError("quasimode residual needs the unit constant field on [0, r0]; B(" + std::to_string(r) +
                            ") = " + std::to_string(profile.field(r)));
  }
  auto res2 = [&](double r) {
    const double R = landau_radial(q.n, q.m, q.b, r);
    const double Rp = landau_radial_derivative(q.n, q.m, q.b, r);
    const double c1 = q.cutoff.d1(r);
    const double res = -(q.cutoff.d2(r) + c1 / r) * R - 2.0 * c1 * Rp;
    return 2.0 * std::numbers::pi * res * res * r;
  };
  QuasimodeResidual out;
  out.residual = std::sqrt(num::integrate(res2, q.cutoff.inner(), r0, 128));
  out.norm = q.norm;
  out.eigenvalue = landau_eigenvalue(q.n, q.m, q.b);
  return out;
}

std::string_view to_string(QuasimodeModel model) {
  switch (model) {
    case QuasimodeModel::anharmonic: return "anharmonic";
    case QuasimodeModel::well: return "well";
    case QuasimodeModel::island: return "island";
  }
  return "unknown";
}

QuasimodeModel quasimode_model_from_string(std::string_view name) {
  if (name == "anharmonic") return QuasimodeModel::anharmonic;
  if (name == "well") return QuasimodeModel::well;
  if (name == "island") return QuasimodeModel::island;
  throw ValidationError("unknown quasimode model '" + std::string(name) + "' (expected anharmonic, well or island)");
}

double generic_quasimode_residual(const EigenResult& eig, std::size_t index, const Cutoff& cutoff,
                                  const FieldProfile& profile, QuasimodeModel model) {
  if (index >= eig.vectors.size()) throw ValidationError("eigenvector index out of range");
  const auto& g = eig.grid;
  if (cutoff.r0() > g.r_max() * (1.0 + 1e-12)) throw ValidationError("cutoff radius exceeds the eigenpair grid");
  const bool neumann = eig.boundary == Boundary::neumann_far;
  if ((model == QuasimodeModel::island) != neumann)
    throw ValidationError("model '" + std::string(to_string(model)) + "' does not match the eigenpair boundary condition");

  const std::size_t n = g.size();
  const double dr = g.dr();
  std::vector<double> chi(n + 1);
  for (std::size_t j = 0; j < n; ++j) chi[j] = cutoff.value(g.node(j));
  chi[n] = 0.0;

  for (std::size_t j = 0; j < n; ++j) {
    if (chi[j] == 0.0) continue;
    const double r = g.node(j);
    const double w = static_cast<double>(eig.m) / r - eig.b * profile.potential(r);
    const double v = w * w;
    if (std::abs(v - eig.potential[j]) > 1e-9 * (1.0 + std::abs(v)))
      throw ValidationError("model/profile mismatch at r=" + std::to_string(r) + ": profile potential " +
                            std::to_string(v) + " vs eigenpair potential " + std::to_string(eig.potential[j]));
  }

  const auto& u = eig.vectors[index];
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = g.node(j);
    const double scale = 1.0 / (r * dr * dr);
    double res = 0.0;
    if (j > 0) res -= g.half(j) * scale * (chi[j - 1] - chi[j]) * u[j - 1];
    if (j + 1 < n) res -= g.half(j + 1) * scale * (chi[j + 1] - chi[j]) * u[j + 1];
    total += res * res * r * dr;
  }
  return std::sqrt(total);
}

TZWindow tz_window(double center, double h, double c, double r0, double alpha) {
  if (!(h > 0.0) || !(c > 0.0) || !(r0 > 0.0)) throw ValidationError("tz_window needs h, c, r0 > 0");
  if (alpha <= 0.0) alpha = 2.0 * c;
  if (!(alpha > c)) throw ValidationError("tz_window needs alpha > c so that R(h) < S(h)");
  TZWindow w;
  w.center = center;
  w.h = h;
  w.c = c;
  w.r0 = r0;
  w.alpha = alpha;
  const double k = c * r0 * r0;
  w.S = std::exp(-k / h);
  w.R = std::exp(-alpha * r0 * r0 / h);
  w.half_width = std::exp(-k / (2.0 * h)) / (h * h);
  w.depth = std::exp(-k / h) / (h * h * h);
  return w;
}

double tz_crossover(double c, double r0) {
  if (!(c > 0.0) || !(r0 > 0.0)) throw ValidationError("tz_crossover needs c, r0 > 0");
  const double k = 0.5 * c * r0 * r0;
  // log w(h) = -2 log h - k / h, maximal at h = k / 2.
  auto log_w = [k](double h) { return -2.0 * std::log(h) - k / h; };
  const double peak = 0.5 * k;
  if (log_w(peak) <= 0.0) return std::numeric_limits<double>::infinity();
  double lo = peak;
  while (log_w(lo) >= 0.0) lo *= 0.5;
  return num::bisect(log_w, lo, peak, 1e-15);
}

}  // namespace magres
