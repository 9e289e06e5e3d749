#include "magres/tridiag.hpp"

#include <cmath>
#include <limits>
#include <string>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "magres/errors.hpp"

namespace magres {

SymEig sym_tridiag_lowest(std::span<const double> d, std::span<const double> e, std::size_t k, bool want_vectors) {
  const std::size_t n = d.size();
  if (n == 0 || e.size() + 1 != n) throw ValidationError("tridiagonal: off-diagonal must have n-1 entries");
  if (k == 0 || k > n) throw ValidationError("tridiagonal: requested " + std::to_string(k) + " eigenpairs of " + std::to_string(n));

  std::vector<double> dd(d.begin(), d.end());
  std::vector<double> ee(n, 0.0);
  std::copy(e.begin(), e.end(), ee.begin());

  SymEig out;
  out.n = n;
  std::vector<double> w(n);
  std::vector<lapack_int> isuppz(2 * k);
  if (want_vectors) out.vectors.resize(n * k);
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', static_cast<lapack_int>(n),
                                         dd.data(), ee.data(), 0.0, 0.0, 1, static_cast<lapack_int>(k), 0.0, &found,
                                         w.data(), want_vectors ? out.vectors.data() : nullptr,
                                         static_cast<lapack_int>(n), isuppz.data());
  if (info != 0 || found != static_cast<lapack_int>(k))
    throw NumericalError("dstevr failed (info=" + std::to_string(info) + ", found " + std::to_string(found) + " of " +
                         std::to_string(k) + ")");
  out.values.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

std::vector<cplx> complex_symmetric_ql(std::span<const cplx> diag, std::span<const cplx> off) {
  const std::size_t n = diag.size();
  if (n == 0 || off.size() + 1 != n) throw ValidationError("tridiagonal: off-diagonal must have n-1 entries");
  std::vector<cplx> d(diag.begin(), diag.end());
  std::vector<cplx> e(n, cplx{});
  std::copy(off.begin(), off.end(), e.begin());

  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int max_iter = 60;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (iter++ == max_iter)
        throw NumericalError("complex QL: no convergence at index " + std::to_string(l) +
                             ", residual coupling " + std::to_string(std::abs(e[l])));
      cplx g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      cplx r = std::sqrt(g * g + 1.0);
      // Pick the sign that keeps |g +- r| large.
      g = d[m] - d[l] + e[l] / (std::abs(g + r) >= std::abs(g - r) ? g + r : g - r);
      cplx s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        const cplx f = s * e[i];
        const cplx b = c * e[i];
        r = std::sqrt(f * f + g * g);
        e[i + 1] = r;
        if (std::abs(r) <= eps * (std::abs(f) + std::abs(g))) {
          if (std::abs(f) + std::abs(g) == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          throw NumericalError("complex QL: rotation breakdown (isotropic vector) at index " + std::to_string(i));
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  return d;
}

std::vector<cplx> complex_tridiag_dense(std::span<const cplx> d, std::span<const cplx> e) {
  const std::size_t n = d.size();
  if (n == 0 || e.size() + 1 != n) throw ValidationError("tridiagonal: off-diagonal must have n-1 entries");
  std::vector<cplx> h(n * n, cplx{});
  auto at = [&](std::size_t i, std::size_t j) -> cplx& { return h[i + j * n]; };
  for (std::size_t i = 0; i < n; ++i) {
    at(i, i) = d[i];
    if (i + 1 < n) {
      at(i, i + 1) = e[i];
      at(i + 1, i) = e[i];
    }
  }
  std::vector<cplx> w(n);
  const lapack_int ln = static_cast<lapack_int>(n);
  const lapack_int info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', ln, 1, ln, h.data(), ln, w.data(), nullptr, ln);
  if (info != 0) throw NumericalError("zhseqr failed (info=" + std::to_string(info) + ")");
  return w;
}

std::vector<cplx> complex_symmetric_eigenvalues(std::span<const cplx> d, std::span<const cplx> e) {
  try {
    return complex_symmetric_ql(d, e);
  } catch (const NumericalError&) {
    return complex_tridiag_dense(d, e);
  }
}

}  // namespace magres
