#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "magres/cscale.hpp"
#include "magres/errors.hpp"
#include "magres/tridiag.hpp"

using namespace magres;

namespace {

FieldProfile unit_disk() {
  FieldSpec s;
  s.R0 = 1.0;
  return make_profile(s);
}

std::vector<cplx> sorted(std::vector<cplx> v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  return v;
}

}  // namespace

TEST_CASE("scaling profile invariants") {
  const ScalingProfile sp(0.3, 1.5, 10.0);
  CHECK(sp.f(1.0) == cplx(1.0, 0.0));
  const cplx far = sp.f(12.0);
  CHECK(std::abs(far - 12.0 * std::exp(cplx(0.0, 0.3))) < 1e-14);
  CHECK(std::abs(sp.df(12.0) - std::exp(cplx(0.0, 0.3))) < 1e-14);
  for (double t = 0.1; t < 20.0; t += 0.37) {
    CHECK(std::arg(sp.f(t)) >= -1e-15);
    CHECK(std::arg(sp.f(t)) <= 0.3 + 1e-15);
  }
  // df against a centered difference
  const double t = 4.2, e = 1e-6;
  CHECK(std::abs((sp.f(t + e) - sp.f(t - e)) / (2 * e) - sp.df(t)) < 1e-7);
  CHECK_THROWS_AS(ScalingProfile(0.9, 1.5, 10.0), ValidationError);
  CHECK_THROWS_AS(ScalingProfile(0.3, 10.0, 1.5), ValidationError);
}

TEST_CASE("complex QL agrees with the dense Hessenberg solver") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 60;
  std::vector<cplx> d(n), e(n - 1);
  for (auto& x : d) x = cplx(2.0 + u(rng), 0.3 * u(rng));
  for (auto& x : e) x = cplx(u(rng), 0.2 * u(rng));
  const auto a = sorted(complex_symmetric_ql(d, e));
  const auto b = sorted(complex_tridiag_dense(d, e));
  REQUIRE(a.size() == n);
  REQUIRE(b.size() == n);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
}

TEST_CASE("real symmetric solver against a closed form") {
  // -1, 2, -1 Dirichlet matrix: 2 - 2 cos(k pi / (n + 1))
  const std::size_t n = 200;
  std::vector<double> d(n, 2.0), e(n - 1, -1.0);
  const auto eig = sym_tridiag_lowest(d, e, 3, false);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(eig.values[k] == doctest::Approx(2.0 - 2.0 * std::cos((k + 1) * M_PI / (n + 1))).epsilon(1e-12));
}

TEST_CASE("theta = 0 reduces to the real fiber") {
  const auto disk = unit_disk();
  const RadialGrid g(30.0, 600);
  const ScalingProfile none(0.0, 1.5, 10.0);
  const double h = 0.5;
  const auto op = assemble_scaled_fiber(disk, 0, h, none, g);
  const auto real = assemble_fiber(disk, 0, 1.0 / h, g);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(op.diag[j] - h * h * real.diag[j]) < 1e-9 * (1 + std::abs(op.diag[j])));
  for (std::size_t j = 0; j + 1 < g.size(); ++j) CHECK(std::abs(op.off[j] - h * h * real.off[j]) < 1e-9 * (1 + std::abs(op.off[j])));
}

TEST_CASE("rotated continuum follows exp(-2i theta)") {
  const auto disk = unit_disk();
  const RadialGrid g(30.0, 1500);
  const ScalingProfile sp(0.3, 1.5, 10.0);
  const auto spec = complex_spectrum(assemble_scaled_fiber(disk, 0, 0.2, sp, g));
  std::size_t on_ray = 0;
  for (const auto& z : spec)
    if (std::abs(z) > 0.05 && std::abs(z) < 2.0 && std::abs(std::arg(z) + 0.6) < 0.05) ++on_ray;
  CHECK(on_ray > 10);
  for (const auto& z : spec) CHECK(z.imag() <= 1e-8 * (1.0 + std::abs(z)));
}

TEST_CASE("filter pairs theta-stable points and rejects bad windows") {
  const cplx res(0.5, -0.01);
  std::vector<cplx> s1{res, cplx(0.4, -0.3)}, s2{res + cplx(1e-8, 0.0), cplx(0.38, -0.35)};
  const Window w{0.3, 0.7, -0.05, 0.0};
  const auto out = filter_resonances(s1, s2, 0.25, 0.35, 1e-5, w);
  REQUIRE(out.size() == 1);
  CHECK(out[0].z == res);
  CHECK(out[0].drift == doctest::Approx(1e-8));
  CHECK_THROWS_AS(filter_resonances(s1, s2, 0.25, 0.35, 1e-5, Window{0.3, 0.7, -0.05, 0.1}), ValidationError);
  // window dipping below the rotated continuum
  CHECK_THROWS_AS(filter_resonances(s1, s2, 0.25, 0.35, 1e-5, Window{0.1, 0.7, -1.0, 0.0}), ValidationError);
  // two candidates inside the tolerance are ambiguous
  std::vector<cplx> twin{res, res + cplx(1e-7, 0.0)};
  CHECK_THROWS_AS(filter_resonances(s1, twin, 0.25, 0.35, 1e-5, w), NumericalError);
}

TEST_CASE("constant disk at h = 0.2 carries one resonance near h") {
  ResonanceSearch s;
  s.h = 0.2;
  s.window = window_around(0.2, 0.2);
  const auto run = find_resonances(unit_disk(), s);
  REQUIRE(run.resonances.size() == 1);
  const auto z = run.resonances[0].z;
  CHECK(z.imag() < 0.0);
  CHECK(std::abs(z.real() - 0.2) < 0.05);
  CHECK(run.resonances[0].drift <= 1e-5 * (1.0 + std::abs(z)));
  CHECK(run.continuum_ratio >= 10.0);
  CHECK(run.T0 == doctest::Approx(10.0));
  CHECK(run.r_max == doctest::Approx(30.0));
}
