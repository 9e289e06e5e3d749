#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "magres/field.hpp"
#include "magres/grid.hpp"
#include "magres/radial.hpp"

namespace magres {

/// Associated Laguerre polynomial L_n^k(x) by the three-term recurrence.
double laguerre(int n, int k, double x);

/// Normalized radial factor of the Landau state (n, m) at field b:
///   C r^|m| exp(-b r^2 / 4) L_n^|m|(b r^2 / 2),
///   C^2 = b^(|m|+1) n! / (2 pi 2^|m| (n+|m|)!),
/// so that 2 pi int R^2 r dr = 1. In this sign convention the sector
/// eigenvalue is b (2n + 1 + |m| - m).
double landau_radial(int n, int m, double b, double r);
double landau_radial_derivative(int n, int m, double b, double r);
double landau_eigenvalue(int n, int m, double b);

/// chi = 1 on [0, (1 - delta) r0], 0 beyond r0, quintic shoulder between
/// (C^2 at both joins, |chi'| <= 15 / (8 delta r0)).
class Cutoff {
public:
  Cutoff(double r0, double delta);
  double r0() const { return r0_; }
  double delta() const { return delta_; }
  double inner() const { return (1.0 - delta_) * r0_; }
  double value(double r) const;
  double d1(double r) const;
  double d2(double r) const;

private:
  double r0_, delta_;
};

struct Quasimode {
  int n = 0;
  int m = 0;
  double b = 1.0;
  Cutoff cutoff{1.0, 0.2};
  std::vector<double> values;  // chi * R on the grid nodes
  double norm = 0.0;           // plane L2 norm by Gauss-Legendre quadrature
  double norm_defect = 0.0;    // 1 - norm, computed without cancellation
};

/// Requires delta r0 / dr >= 16 (shoulder resolved) and r0 <= r_max.
Quasimode build_quasimode(int n, int m, double b, double r0, double delta, const RadialGrid& grid);

struct QuasimodeResidual {
  double residual = 0.0;  // ||(H - Lambda) u|| over the plane
  double norm = 0.0;
  double eigenvalue = 0.0;
};

/// Residual from the commutator [H, chi] psi = -(chi'' + chi'/r) R - 2 chi' R';
/// the A . grad chi term vanishes for radial chi. The profile must be the unit
/// constant field on [0, r0] (the scale is q.b).
QuasimodeResidual quasimode_residual(const Quasimode& q, const FieldProfile& profile);

enum class QuasimodeModel { anharmonic, well, island };
std::string_view to_string(QuasimodeModel model);
QuasimodeModel quasimode_model_from_string(std::string_view name);

/// Residual of chi u for a discrete eigenpair, measured with the fiber
/// operator of `profile` at the eigenpair's scale: the discrete commutator
/// [A, chi] u, in the r dr norm of the radial sector. The profile potential
/// must match the operator that produced the eigenpair wherever chi != 0.
double generic_quasimode_residual(const EigenResult& eig, std::size_t index, const Cutoff& cutoff,
                                  const FieldProfile& profile, QuasimodeModel model);

/// Tang-Zworski window with S(h) = exp(-c r0^2 / h), R(h) = exp(-alpha r0^2 / h),
/// half-width w = h^-2 sqrt(S) and depth h^-3 S.
struct TZWindow {
  double center = 0.0;
  double h = 0.0;
  double c = 0.0;
  double r0 = 0.0;
  double alpha = 0.0;
  double S = 0.0;
  double R = 0.0;
  double half_width = 0.0;
  double depth = 0.0;
};

/// alpha <= 0 selects 2c. Requires c > 0, h > 0, alpha > c.
TZWindow tz_window(double center, double h, double c, double r0, double alpha = 0.0);

/// Smallest h* > 0 with w(h*) = 1; w < 1 for all h < h*. Returns +inf when
/// w <= 1 everywhere (the window is always informative).
double tz_crossover(double c, double r0);

}  // namespace magres
