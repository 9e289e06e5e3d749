#include "magres/cscale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "magres/errors.hpp"
#include "magres/parallel.hpp"
#include "magres/tridiag.hpp"

namespace magres {

namespace {

double smoothstep(double s) { return s * s * s * (10.0 + s * (-15.0 + 6.0 * s)); }
double smoothstep_d(double s) { return 30.0 * s * s * (1.0 - s) * (1.0 - s); }

bool by_re_im(cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); }

}  // namespace

ScalingProfile::ScalingProfile(double theta, double R1, double T0) : theta_(theta), R1_(R1), T0_(T0) {
  if (!(theta >= 0.0 && theta <= 0.7)) throw ValidationError("scaling angle must lie in [0, 0.7] rad");
  if (!(R1 > 0.0 && R1 < T0) || !std::isfinite(T0)) throw ValidationError("scaling radii must satisfy 0 < R1 < T0");

  const std::size_t samples = 4000;
  for (std::size_t i = 0; i <= samples; ++i) {
    const double t = 2.0 * T0 * static_cast<double>(i) / static_cast<double>(samples);
    const cplx ft = f(t);
    if (t <= R1 && ft != cplx(t, 0.0)) throw ValidationError("scaling profile deforms below R1");
    if (t >= T0 && std::abs(ft - std::polar(t, theta)) > 1e-12 * (1.0 + t))
      throw ValidationError("scaling profile is not fully rotated beyond T0");
    if (t > 0.0) {
      const double arg = std::arg(ft);
      if (arg < -1e-15 || arg > theta + 1e-15) throw ValidationError("arg f leaves [0, theta]");
    }
    if (std::abs(df(t)) == 0.0) throw ValidationError("scaling profile has f' = 0");
  }
}

double ScalingProfile::ramp(double t) const {
  if (t <= R1_) return 0.0;
  if (t >= T0_) return 1.0;
  return smoothstep((t - R1_) / (T0_ - R1_));
}

cplx ScalingProfile::f(double t) const {
  if (t <= R1_ || theta_ == 0.0) return {t, 0.0};
  return std::polar(t, theta_ * ramp(t));
}

cplx ScalingProfile::df(double t) const {
  if (t <= R1_ || theta_ == 0.0) return {1.0, 0.0};
  const double width = T0_ - R1_;
  const double gp = t >= T0_ ? 0.0 : smoothstep_d((t - R1_) / width) / width;
  return std::polar(1.0, theta_ * ramp(t)) * cplx(1.0, theta_ * t * gp);
}

ScaledFiber assemble_scaled_fiber(const FieldProfile& profile, int m, double h, const ScalingProfile& sp,
                                  const RadialGrid& grid) {
  if (!(h > 0.0)) throw ValidationError("h must be positive");
  const double R0 = profile.support_radius();
  if (!std::isfinite(R0) || !std::isfinite(profile.flux()))
    throw ValidationError("complex scaling needs a compactly supported field");
  if (!(sp.R1() > R0))
    throw ValidationError("deformation region overlaps the field support (R1=" + std::to_string(sp.R1()) +
                          " <= R0=" + std::to_string(R0) + ")");
  if (grid.r_max() < 3.0 * sp.T0() * (1.0 - 1e-12))
    throw ValidationError("scaled grid needs r_max >= 3 T0");

  const std::size_t n = grid.size();
  const double d2 = grid.dr() * grid.dr();
  const double h2 = h * h;
  const double alpha = profile.flux();
  const double hm = h * static_cast<double>(m);

  // f / f' on half nodes, zero at the origin.
  std::vector<cplx> w(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    const double t = grid.half(k);
    w[k] = sp.f(t) / sp.df(t);
  }
  std::vector<cplx> sq(n);
  ScaledFiber op;
  op.m = m;
  op.h = h;
  op.theta = sp.theta();
  op.diag.resize(n);
  op.off.resize(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = grid.node(j);
    const cplx ft = sp.f(t);
    const cplx mass = ft * sp.df(t);
    sq[j] = std::sqrt(mass);
    cplx v;
    if (t < sp.R1()) {
      const double x = hm / t - profile.potential(t);
      v = x * x;
    } else {
      v = (hm - alpha) * (hm - alpha) / (ft * ft);
    }
    const cplx right = j + 1 == n ? 2.0 * w[n] : w[j + 1];
    op.diag[j] = h2 * (w[j] + right) / (d2 * mass) + v;
  }
  for (std::size_t j = 0; j + 1 < n; ++j) op.off[j] = -h2 * w[j + 1] / (d2 * sq[j] * sq[j + 1]);
  return op;
}

std::vector<cplx> complex_spectrum(const ScaledFiber& op) {
  auto values = complex_symmetric_eigenvalues(op.diag, op.off);
  for (const auto& z : values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw NumericalError("complex eigensolver returned a non-finite value");
  std::sort(values.begin(), values.end(), by_re_im);
  return values;
}

Window window_around(double energy, double h) { return {energy - 0.4 * h, energy + 0.4 * h, -0.3 * h, 0.0}; }

std::vector<Resonance> filter_resonances(const std::vector<cplx>& spec1, const std::vector<cplx>& spec2, double theta1,
                                         double theta2, double tol, const Window& window) {
  if (!(theta1 > 0.0) || !(theta2 > 0.0)) throw ValidationError("scaling angles must be positive");
  if (!(tol > 0.0)) throw ValidationError("pairing tolerance must be positive");
  if (window.im_hi > 0.0 || window.im_lo > window.im_hi || window.re_lo > window.re_hi)
    throw ValidationError("window must be a non-empty rectangle in Im z <= 0");
  const double theta_min = std::min(theta1, theta2);
  if (!(window.re_lo > 0.0) || !(std::atan2(window.im_lo, window.re_lo) > -2.0 * theta_min))
    throw ValidationError("window overlaps the rotated continuum (needs arg > -2 theta_min = " +
                          std::to_string(-2.0 * theta_min) + ")");

  std::vector<Resonance> out;
  std::vector<std::size_t> used;
  for (const auto& z1 : spec1) {
    if (!window.contains(z1) || !(z1.imag() < -1e-10)) continue;
    const double bound = tol * (1.0 + std::abs(z1));
    std::vector<std::size_t> hits;
    for (std::size_t k = 0; k < spec2.size(); ++k)
      if (std::abs(spec2[k] - z1) <= bound) hits.push_back(k);
    if (hits.empty()) continue;
    if (hits.size() > 1 || std::find(used.begin(), used.end(), hits.front()) != used.end()) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "ambiguous pairing near z=" << z1 << ": candidates";
      for (auto k : hits) msg << ' ' << spec2[k];
      throw NumericalError(msg.str());
    }
    used.push_back(hits.front());
    Resonance r;
    r.z = z1;
    r.theta1 = theta1;
    r.theta2 = theta2;
    r.drift = std::abs(spec2[hits.front()] - z1);
    out.push_back(r);
  }
  return out;
}

double continuum_motion_ratio(const std::vector<cplx>& spec1, const std::vector<cplx>& spec2, double theta1,
                              double tol, double zmax) {
  double ratio = std::numeric_limits<double>::infinity();
  for (const auto& z1 : spec1) {
    const double mag = std::abs(z1);
    if (mag == 0.0 || mag > zmax || std::abs(std::arg(z1) + 2.0 * theta1) >= 0.5 * theta1) continue;
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& z2 : spec2) nearest = std::min(nearest, std::abs(z2 - z1));
    ratio = std::min(ratio, nearest / (tol * (1.0 + mag)));
  }
  return ratio;
}

ResonanceRun find_resonances(const FieldProfile& profile, const ResonanceSearch& s) {
  if (s.theta1 == s.theta2) throw ValidationError("the two scaling angles must differ");
  if (s.sectors.lo > s.sectors.hi) throw ValidationError("sector range is empty");
  const double R0 = profile.support_radius();
  if (!std::isfinite(R0)) throw ValidationError("complex scaling needs a compactly supported field");

  ResonanceRun run;
  run.R1 = s.R1 > 0.0 ? s.R1 : R0 + 0.5;
  run.T0 = s.T0 > 0.0 ? s.T0 : 10.0 * std::max(R0, 1e-300);
  run.r_max = s.r_max > 0.0 ? s.r_max : 3.0 * run.T0;
  const RadialGrid grid(run.r_max, s.grid_n);
  const ScalingProfile sp1(s.theta1, run.R1, run.T0);
  const ScalingProfile sp2(s.theta2, run.R1, run.T0);

  const std::size_t sectors = static_cast<std::size_t>(s.sectors.hi - s.sectors.lo + 1);
  auto spectra = parallel_map(2 * sectors, [&](std::size_t i) {
    const int m = s.sectors.lo + static_cast<int>(i / 2);
    return complex_spectrum(assemble_scaled_fiber(profile, m, s.h, i % 2 == 0 ? sp1 : sp2, grid));
  });

  run.continuum_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sectors; ++i) {
    const int m = s.sectors.lo + static_cast<int>(i);
    auto found = filter_resonances(spectra[2 * i], spectra[2 * i + 1], s.theta1, s.theta2, s.tol, s.window);
    for (auto& r : found) {
      r.m = m;
      r.h = s.h;
      r.grid_n = s.grid_n;
      run.resonances.push_back(r);
    }
    const double zmax = 10.0 * std::max(std::abs(s.window.re_hi), std::abs(s.window.im_lo));
    run.continuum_ratio = std::min(run.continuum_ratio,
                                   continuum_motion_ratio(spectra[2 * i], spectra[2 * i + 1], s.theta1, s.tol, zmax));
  }
  std::sort(run.resonances.begin(), run.resonances.end(), [](const Resonance& x, const Resonance& y) {
    if (x.z.real() != y.z.real()) return x.z.real() < y.z.real();
    return x.m < y.m;
  });
  return run;
}

}  // namespace magres
