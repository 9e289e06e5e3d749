#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace magres::num {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(std::size_t n);

/// Composite Gauss-Legendre integral of f over [a, b] with `panels` panels of
/// a 10-point rule.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::size_t panels = 64);

/// Ordinary least squares y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tol = 1e-14, int max_iter = 200);

/// Second-order Richardson combination (4 fine - coarse) / 3.
inline double richardson2(double fine, double coarse) { return (4.0 * fine - coarse) / 3.0; }

/// Observed order log2(|e_coarse| / |e_fine|) from three successive
/// refinements by a factor 2.
double observed_order(double coarse, double mid, double fine);

}  // namespace magres::num
