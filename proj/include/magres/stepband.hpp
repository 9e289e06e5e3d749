#pragma once

#include <cstddef>
#include <vector>

namespace magres {

/// Magnetic step fiber h_a[xi] = -d^2/dtau^2 + (xi + b_a(tau) tau)^2 with
/// b_a = 1 on tau > 0 and a on tau < 0, truncated to [-L, L] with Dirichlet
/// ends. The grid has N cells of width 2L/N; N is even so tau = 0 is a node.
struct StepParams {
  double a = -0.5;
  double L = 12.0;
  std::size_t N = 4800;
  /// a outside (-1, 0) is only accepted with this flag.
  bool validation_mode = false;

  double dtau() const { return 2.0 * L / static_cast<double>(N); }
  void validate() const;

  /// Default resolution (dtau = 0.005 / resolution) with L widened until the
  /// end potential clears mu + 10 for every xi in [xi_lo, xi_hi].
  static StepParams for_a(double a, double resolution = 1.0, double xi_lo = -4.0, double xi_hi = 1.0,
                          bool validation_mode = false);
};

/// Smallest L for which both end potentials stay at least 11 above zero over
/// the xi range (the band never exceeds 1).
double step_safe_half_length(double a, double xi_lo, double xi_hi);

struct BandSample {
  double xi = 0.0;
  double mu = 0.0;
  std::vector<double> phi;  // unit L2 norm on the grid, phi(0) > 0
  double phi0 = 0.0;        // phi at tau = 0
  double phi0p = 0.0;       // centered difference at tau = 0
};

BandSample band_value(const StepParams& params, double xi, bool want_vector = false);

struct BandMinimum {
  double zeta = 0.0;
  double beta = 0.0;
  double slope = 0.0;  // numerical d mu / d xi at zeta
};

BandMinimum minimize_band(const StepParams& params, double xi_lo = -4.0, double xi_hi = 1.0);

struct SecondDerivative {
  double value = 0.0;   // Richardson combination
  double coarse = 0.0;  // step 1e-2
  double fine = 0.0;    // step 5e-3
};

SecondDerivative band_second_derivative(const StepParams& params, double zeta);

struct SpectralConstants {
  double a = 0.0;
  double beta = 0.0;
  double zeta = 0.0;
  double mu2 = 0.0;
  double phi0 = 0.0;
  double phi0p = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double L = 0.0;
  std::size_t N = 0;
};

/// Full constant set for a in (-1, 0): C1 = (1/3)(1 - 1/a) zeta phi(0) phi'(0),
/// C2 = sqrt(mu'' C1) / 2.
SpectralConstants spectral_constants(const StepParams& params, double xi_lo = -4.0, double xi_hi = 1.0);

/// mu on the grid xi_lo, xi_lo + step, ..., up to xi_hi.
std::vector<BandSample> band_table(const StepParams& params, double xi_lo, double xi_hi, double step);

}  // namespace magres
