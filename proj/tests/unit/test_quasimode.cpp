#include <doctest.h>

#include <cmath>
#include <random>

#include "magres/errors.hpp"
#include "magres/quasimode.hpp"
#include "magres/radial.hpp"

using namespace magres;

namespace {

// Composite Simpson rule, kept local so the checks do not reuse the library
// quadrature.
template <class F>
double simpson(F f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("Laguerre polynomials") {
  for (int k : {0, 1, 4})
    for (double x : {-1.0, 0.0, 2.5}) CHECK(laguerre(0, k, x) == 1.0);
  CHECK(laguerre(1, 0, 2.0) == doctest::Approx(-1.0));
  CHECK(laguerre(2, 1, 0.0) == doctest::Approx(3.0));
  // L_n^k(0) = binomial(n + k, n)
  CHECK(laguerre(5, 3, 0.0) == doctest::Approx(56.0));
  // L_2^0(x) = (x^2 - 4x + 2) / 2
  CHECK(laguerre(2, 0, 1.7) == doctest::Approx((1.7 * 1.7 - 4 * 1.7 + 2) / 2));
  CHECK_THROWS_AS(laguerre(-1, 0, 0.0), ValidationError);
}

TEST_CASE("Landau radial factors: normalization, orthogonality, derivative") {
  CHECK(landau_radial(0, 0, 1.0, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)));
  for (int n = 0; n < 3; ++n)
    for (int m : {-2, 0, 3}) {
      const double b = 1.7;
      const double norm = simpson([&](double r) { return 2 * M_PI * std::pow(landau_radial(n, m, b, r), 2) * r; }, 0.0, 20.0);
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
      const double r = 0.9, e = 1e-6;
      CHECK(landau_radial_derivative(n, m, b, r) ==
            doctest::Approx((landau_radial(n, m, b, r + e) - landau_radial(n, m, b, r - e)) / (2 * e)).epsilon(1e-7));
    }
  const double overlap = simpson([](double r) { return landau_radial(0, 0, 1.0, r) * landau_radial(1, 0, 1.0, r) * r; }, 0.0, 20.0);
  CHECK(std::abs(overlap) < 1e-10);
}

TEST_CASE("cutoff shape") {
  const Cutoff c(1.0, 0.2);
  CHECK(c.value(0.79) == 1.0);
  CHECK(c.value(1.0) == 0.0);
  CHECK(c.value(0.9) == doctest::Approx(0.5));
  const double e = 1e-6;
  for (double r : {0.82, 0.9, 0.97}) {
    CHECK(c.d1(r) == doctest::Approx((c.value(r + e) - c.value(r - e)) / (2 * e)).epsilon(1e-6));
    CHECK(c.d2(r) == doctest::Approx((c.d1(r + e) - c.d1(r - e)) / (2 * e)).epsilon(1e-5));
    CHECK(std::abs(c.d1(r)) <= 15.0 / (8.0 * 0.2) + 1e-12);
  }
  CHECK_THROWS_AS(Cutoff(1.0, 1.5), ValidationError);
}

TEST_CASE("quasimode norm defect: positive, small, and absent for a wide cutoff") {
  const RadialGrid g(20.0, 4000);
  const auto q = build_quasimode(0, 0, 25.0, 1.0, 0.2, g);
  CHECK(q.norm_defect > 0.0);
  CHECK(q.norm_defect <= std::exp(-0.64 * 25.0 / 2.0) * 25.0 * 1.5);
  // direct oracle: 1 - sqrt(2 pi int chi^2 R^2 r dr)
  const double kept = simpson([&](double r) { return 2 * M_PI * std::pow(q.cutoff.value(r) * landau_radial(0, 0, 25.0, r), 2) * r; }, 0.0, 1.0);
  CHECK(q.norm_defect == doctest::Approx(1.0 - std::sqrt(kept)).epsilon(1e-6));
  for (std::size_t j = 0; j < g.size(); ++j)
    if (g.node(j) >= 1.0) CHECK(q.values[j] == 0.0);

  const auto wide = build_quasimode(0, 0, 1.0, 10.0, 0.2, g);
  CHECK(wide.norm == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(build_quasimode(0, 0, 1.0, 1.0, 0.05, RadialGrid(20.0, 1000)), ValidationError);
}

TEST_CASE("quasimode residual: commutator formula against a direct operator application") {
  const double b = 9.0;
  const auto q = build_quasimode(0, 0, b, 1.0, 0.2, RadialGrid(20.0, 4000));
  const auto res = quasimode_residual(q, constant_plane_profile());
  // Apply -u'' - u'/r + (b r / 2)^2 u - b to u = chi R by finite differences.
  auto u = [&](double r) { return q.cutoff.value(r) * landau_radial(0, 0, b, r); };
  const double e = 1e-4;
  auto Hu = [&](double r) {
    const double upp = (u(r + e) - 2 * u(r) + u(r - e)) / (e * e);
    const double up = (u(r + e) - u(r - e)) / (2 * e);
    return -upp - up / r + std::pow(0.5 * b * r, 2) * u(r) - b * u(r);
  };
  const double direct = std::sqrt(simpson([&](double r) { return 2 * M_PI * Hu(r) * Hu(r) * r; }, 0.05, 1.0, 4000));
  CHECK(res.residual == doctest::Approx(direct).epsilon(1e-4));
  CHECK(res.eigenvalue == doctest::Approx(b));

  FieldSpec s;
  s.R0 = 0.5;
  CHECK_THROWS_AS(quasimode_residual(q, make_profile(s)), ValidationError);
}

TEST_CASE("wide cutoff leaves an exact eigenfunction") {
  const auto q = build_quasimode(0, 0, 4.0, 8.0, 0.2, RadialGrid(20.0, 4000));
  CHECK(quasimode_residual(q, constant_plane_profile()).residual <= 1e-10);
}

TEST_CASE("generic residual vanishes where the eigenvector has already decayed") {
  const auto profile = anharmonic_profile(2.0);
  const auto eig = eigs_lowest(assemble_fiber(profile, 0, 4.0, RadialGrid(8.0, 2000)), 1);
  CHECK(generic_quasimode_residual(eig, 0, Cutoff(7.0, 0.2), profile, QuasimodeModel::anharmonic) <= 1e-10);
  const double near = generic_quasimode_residual(eig, 0, Cutoff(1.5, 0.2), profile, QuasimodeModel::anharmonic);
  CHECK(near > 1e-6);
  CHECK_THROWS_AS(generic_quasimode_residual(eig, 0, Cutoff(1.5, 0.2), well_profile(1.0), QuasimodeModel::well),
                  ValidationError);
  CHECK_THROWS_AS(generic_quasimode_residual(eig, 0, Cutoff(1.5, 0.2), profile, QuasimodeModel::island),
                  ValidationError);
}

TEST_CASE("generic residual decreases with the field scale") {
  const auto profile = anharmonic_profile(2.0);
  double prev = 1e9;
  for (double b : {4.0, 9.0, 16.0}) {
    const auto eig = eigs_lowest(assemble_fiber(profile, 0, b, RadialGrid(8.0, 3000)), 1);
    const double r = generic_quasimode_residual(eig, 0, Cutoff(1.0, 0.2), profile, QuasimodeModel::anharmonic);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("Tang-Zworski window arithmetic") {
  const auto w = tz_window(0.1, 0.1, 0.2, 1.0);
  CHECK(w.half_width == doctest::Approx(100.0 * std::exp(-1.0)).epsilon(1e-14));
  CHECK(w.depth == doctest::Approx(1000.0 * std::exp(-2.0)).epsilon(1e-14));
  CHECK(w.half_width == doctest::Approx(36.79).epsilon(1e-3));
  CHECK(w.depth == doctest::Approx(135.3).epsilon(1e-3));
  CHECK(w.R < w.S);
  CHECK(tz_window(0.1, 0.02, 0.2, 1.0).half_width == doctest::Approx(16.84).epsilon(1e-3));
  CHECK_THROWS_AS(tz_window(0.1, 0.1, 0.2, 1.0, 0.1), ValidationError);

  const double hs = tz_crossover(0.2, 1.0);
  const auto at = tz_window(0.0, hs, 0.2, 1.0);
  CHECK(at.half_width == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(tz_window(0.0, 0.9 * hs, 0.2, 1.0).half_width < 1.0);
}
