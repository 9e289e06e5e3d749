#include "magres/stepband.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "magres/errors.hpp"
#include "magres/parallel.hpp"
#include "magres/tridiag.hpp"

namespace magres {

namespace {

constexpr double kBaseStep = 0.005;
constexpr double kScanStep = 0.05;
constexpr double kProminence = 1e-8;

double end_potential_min(double a, double L, double xi) {
  const double right = xi + L;
  const double left = xi - a * L;
  return std::min(right * right, left * left);
}

}  // namespace

void StepParams::validate() const {
  if (!(a >= -1.0 && a <= 1.0)) throw ValidationError("step parameter a must lie in [-1, 1]");
  if (!validation_mode && !(a > -1.0 && a < 0.0))
    throw ValidationError("step parameter a must lie in (-1, 0); other values need validation mode");
  if (a == 0.0) throw ValidationError("step parameter a = 0 has no bound band");
  if (!(L > 0.0)) throw ValidationError("step half-length L must be positive");
  if (N < 64 || N % 2 != 0) throw ValidationError("step grid needs an even N >= 64");
}

double step_safe_half_length(double a, double xi_lo, double xi_hi) {
  // Need |xi + L| and |xi - a L| both >= sqrt(11) for every xi in range.
  const double need = std::sqrt(11.0);
  // Right end: xi + L >= need. Left end: xi - a L is >= need for a < 0 and
  // <= -need for a > 0.
  double L = need - xi_lo;
  if (a < 0.0) L = std::max(L, (need - xi_lo) / (-a));
  if (a > 0.0) L = std::max(L, (need + xi_hi) / a);
  return L;
}

StepParams StepParams::for_a(double a, double resolution, double xi_lo, double xi_hi, bool validation_mode) {
  if (!(resolution > 0.0)) throw ValidationError("resolution factor must be positive");
  StepParams p;
  p.a = a;
  p.validation_mode = validation_mode;
  const double step = kBaseStep / resolution;
  const double L = std::max(12.0, a == 0.0 ? 12.0 : step_safe_half_length(a, xi_lo, xi_hi));
  const auto half_cells = static_cast<std::size_t>(std::ceil(L / step - 1e-9));
  p.N = 2 * half_cells;
  p.L = static_cast<double>(half_cells) * step;
  return p;
}

BandSample band_value(const StepParams& params, double xi, bool want_vector) {
  params.validate();
  const double mu_cap = 1.0;  // the band never exceeds the bulk value 1
  if (end_potential_min(params.a, params.L, xi) < mu_cap + 10.0)
    throw TruncationError("step domain too short for xi=" + std::to_string(xi) + " at L=" + std::to_string(params.L));

  const std::size_t n = params.N - 1;  // interior nodes
  const double h = params.dtau();
  const double h2 = h * h;
  std::vector<double> d(n), e(n - 1, -1.0 / h2);
  for (std::size_t k = 0; k < n; ++k) {
    const double tau = -params.L + static_cast<double>(k + 1) * h;
    const double slope = tau > 0.0 ? 1.0 : params.a;
    const double w = xi + slope * tau;
    d[k] = 2.0 / h2 + w * w;
  }
  const auto eig = sym_tridiag_lowest(d, e, 1, true);
  BandSample s;
  s.xi = xi;
  s.mu = eig.values[0];
  auto v = eig.vector(0);
  const std::size_t mid = params.N / 2 - 1;
  const double sign = v[mid] < 0.0 ? -1.0 : 1.0;
  const double scale = sign / std::sqrt(h);
  s.phi0 = v[mid] * scale;
  s.phi0p = (v[mid + 1] - v[mid - 1]) * scale / (2.0 * h);
  if (want_vector) {
    s.phi.resize(n);
    for (std::size_t k = 0; k < n; ++k) s.phi[k] = v[k] * scale;
  }
  return s;
}

BandMinimum minimize_band(const StepParams& params, double xi_lo, double xi_hi) {
  params.validate();
  if (!(xi_lo < xi_hi)) throw ValidationError("band bracket must satisfy xi_lo < xi_hi");
  const auto count = static_cast<std::size_t>(std::floor((xi_hi - xi_lo) / kScanStep + 1e-9)) + 1;
  if (count < 3) throw ValidationError("band bracket shorter than two scan steps");
  const auto mu = parallel_map(count, [&](std::size_t i) {
    return band_value(params, xi_lo + kScanStep * static_cast<double>(i)).mu;
  });

  const auto [lo_it, hi_it] = std::minmax_element(mu.begin(), mu.end());
  if (*hi_it - *lo_it < 1e-6) throw NumericalError("band is flat within tolerance");

  // A scan minimum counts only if it is prominent: on both sides the band
  // must rise by more than kProminence before dropping below it again. This
  // ignores round-off ripples on the flat tails.
  auto side_rise = [&](std::size_t i, int dir) {
    double top = mu[i];
    for (auto k = static_cast<std::ptrdiff_t>(i) + dir; k >= 0 && k < static_cast<std::ptrdiff_t>(count); k += dir) {
      if (mu[static_cast<std::size_t>(k)] < mu[i]) break;
      top = std::max(top, mu[static_cast<std::size_t>(k)]);
    }
    return top - mu[i];
  };
  std::vector<std::size_t> minima;
  for (std::size_t i = 1; i + 1 < count; ++i)
    if (mu[i] < mu[i - 1] && mu[i] <= mu[i + 1] && side_rise(i, -1) > kProminence && side_rise(i, 1) > kProminence)
      minima.push_back(i);
  if (minima.empty())
    throw NumericalError("band minimum not bracketed in [" + std::to_string(xi_lo) + ", " + std::to_string(xi_hi) + "]");
  if (minima.size() > 1) {
    std::ostringstream msg;
    msg << "band has " << minima.size() << " local minima in the scan:";
    for (auto i : minima) msg << " xi=" << xi_lo + kScanStep * static_cast<double>(i) << " (mu=" << mu[i] << ")";
    throw NumericalError(msg.str());
  }

  const double delta = 1e-4;
  auto slope = [&](double xi) {
    return (band_value(params, xi + delta).mu - band_value(params, xi - delta).mu) / (2.0 * delta);
  };
  const std::size_t i = minima.front();
  double a = xi_lo + kScanStep * static_cast<double>(i - 1);
  double b = xi_lo + kScanStep * static_cast<double>(i + 1);
  double fa = slope(a);
  double fb = slope(b);
  if (!(fa < 0.0 && fb > 0.0)) throw NumericalError("band derivative does not change sign around the scan minimum");
  double mid = 0.5 * (a + b);
  double fm = slope(mid);
  for (int it = 0; it < 100 && std::abs(fm) >= 1e-8 && b - a > 1e-12; ++it) {
    if (fm < 0.0) a = mid;
    else b = mid;
    mid = 0.5 * (a + b);
    fm = slope(mid);
  }
  return {mid, band_value(params, mid).mu, fm};
}

SecondDerivative band_second_derivative(const StepParams& params, double zeta) {
  const double mu0 = band_value(params, zeta).mu;
  auto central = [&](double s) {
    return (band_value(params, zeta + s).mu - 2.0 * mu0 + band_value(params, zeta - s).mu) / (s * s);
  };
  SecondDerivative out;
  out.coarse = central(1e-2);
  out.fine = central(5e-3);
  out.value = (4.0 * out.fine - out.coarse) / 3.0;
  if (!(out.value > 1e-6))
    throw NumericalError("band second derivative is not positive (" + std::to_string(out.value) +
                         "); the minimum is degenerate or unresolved");
  return out;
}

SpectralConstants spectral_constants(const StepParams& params, double xi_lo, double xi_hi) {
  params.validate();
  if (!(params.a > -1.0 && params.a < 0.0)) throw ValidationError("spectral constants need a in (-1, 0)");
  const auto min = minimize_band(params, xi_lo, xi_hi);
  const auto d2 = band_second_derivative(params, min.zeta);
  const auto at = band_value(params, min.zeta);

  SpectralConstants c;
  c.a = params.a;
  c.beta = min.beta;
  c.zeta = min.zeta;
  c.mu2 = d2.value;
  c.phi0 = at.phi0;
  c.phi0p = at.phi0p;
  c.C1 = (1.0 - 1.0 / params.a) * c.zeta * c.phi0 * c.phi0p / 3.0;
  c.L = params.L;
  c.N = params.N;
  if (!(c.zeta < 0.0)) throw NumericalError("band minimizer is not negative (zeta=" + std::to_string(c.zeta) + ")");
  if (!(c.C1 > 0.0)) throw NumericalError("C1 is not positive (" + std::to_string(c.C1) + "); check the sign convention");
  c.C2 = 0.5 * std::sqrt(c.mu2 * c.C1);
  return c;
}

std::vector<BandSample> band_table(const StepParams& params, double xi_lo, double xi_hi, double step) {
  if (!(step > 0.0) || !(xi_lo <= xi_hi)) throw ValidationError("band table needs xi_lo <= xi_hi and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((xi_hi - xi_lo) / step + 1e-9)) + 1;
  return parallel_map(count, [&](std::size_t i) { return band_value(params, xi_lo + step * static_cast<double>(i)); });
}

}  // namespace magres
