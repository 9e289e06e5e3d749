#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "magres/field.hpp"
#include "magres/grid.hpp"
#include "magres/radial.hpp"

namespace magres {

using cplx = std::complex<double>;

/// Exterior dilation t -> f(t) = t exp(i theta g(s)), s = (t - R1) / (T0 - R1),
/// with g the quintic smoothstep (0 below R1, 1 above T0).
class ScalingProfile {
public:
  /// Checks f(t) = t below R1, f(t) = e^{i theta} t above T0, 0 <= arg f <= theta
  /// and f' != 0 on a dense grid; throws ValidationError otherwise.
  /// theta = 0 gives the identity map.
  ScalingProfile(double theta, double R1, double T0);

  double theta() const { return theta_; }
  double R1() const { return R1_; }
  double T0() const { return T0_; }

  cplx f(double t) const;
  cplx df(double t) const;
  double ramp(double t) const;

private:
  double theta_, R1_, T0_;
};

struct ScaledFiber {
  int m = 0;
  double h = 0.0;
  double theta = 0.0;
  std::vector<cplx> diag;
  std::vector<cplx> off;
};

/// Complex-symmetric tridiagonal form of the scaled sector operator
///   -h^2 (1/(f f')) d/dt (f/f') d/dt + W,
/// W = (hm/t - a(t))^2 below R1 and (hm - alpha)^2 / f(t)^2 on the deformed
/// region. Dirichlet at r_max. At theta = 0 it is h^2 times the real fiber
/// at b = 1/h.
ScaledFiber assemble_scaled_fiber(const FieldProfile& profile, int m, double h, const ScalingProfile& sp,
                                  const RadialGrid& grid);

/// All eigenvalues ordered by (Re, Im).
std::vector<cplx> complex_spectrum(const ScaledFiber& op);

/// Rectangle re_lo <= Re z <= re_hi, im_lo <= Im z <= im_hi (im_hi <= 0).
struct Window {
  double re_lo = 0.0;
  double re_hi = 0.0;
  double im_lo = 0.0;
  double im_hi = 0.0;

  bool contains(cplx z) const {
    return z.real() >= re_lo && z.real() <= re_hi && z.imag() >= im_lo && z.imag() <= im_hi;
  }
};

/// Default search window around a real energy E at scale h:
/// Re in [E - 0.4 h, E + 0.4 h], Im in [-0.3 h, 0].
Window window_around(double energy, double h);

struct Resonance {
  cplx z;
  int m = 0;
  double h = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double drift = 0.0;
  std::size_t grid_n = 0;
};

/// Pairs the windowed points of spec1 with spec2. Points with |Im z| < 1e-10
/// are dropped, unpaired points are discarded, and two candidates inside the
/// tolerance tol (1 + |z|) raise NumericalError. The window must sit above
/// both rotated continua.
std::vector<Resonance> filter_resonances(const std::vector<cplx>& spec1, const std::vector<cplx>& spec2, double theta1,
                                         double theta2, double tol, const Window& window);

/// Smallest ratio |z1 - nearest spec2 point| / (tol (1 + |z1|)) over the
/// continuum points of spec1 (|arg z + 2 theta1| < theta1 / 2, 0 < |z| <= zmax).
double continuum_motion_ratio(const std::vector<cplx>& spec1, const std::vector<cplx>& spec2, double theta1,
                              double tol, double zmax);

struct ResonanceSearch {
  double h = 0.2;
  SectorRange sectors{0, 0};
  Window window;  // absolute coordinates
  double theta1 = 0.25;
  double theta2 = 0.35;
  double R1 = 0.0;     // 0: R0 + 0.5
  double T0 = 0.0;     // 0: 10 R0
  double r_max = 0.0;  // 0: 3 T0
  std::size_t grid_n = 3000;
  double tol = 1e-5;
};

struct ResonanceRun {
  std::vector<Resonance> resonances;  // sorted by Re z
  double continuum_ratio = 0.0;       // minimum over sectors
  double R1 = 0.0, T0 = 0.0, r_max = 0.0;
};

ResonanceRun find_resonances(const FieldProfile& profile, const ResonanceSearch& search);

}  // namespace magres
