#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace magres {

using cplx = std::complex<double>;

/// Lowest k eigenpairs of a real symmetric tridiagonal matrix with diagonal
/// d (size n) and off-diagonal e (size n-1). Vectors are stored column by
/// column, each of length n and unit Euclidean norm.
struct SymEig {
  std::vector<double> values;
  std::vector<double> vectors;
  std::size_t n = 0;

  std::span<const double> vector(std::size_t i) const { return {vectors.data() + i * n, n}; }
};

SymEig sym_tridiag_lowest(std::span<const double> d, std::span<const double> e, std::size_t k,
                          bool want_vectors = true);

/// All eigenvalues of a complex symmetric (not Hermitian) tridiagonal matrix
/// by implicit QL with complex orthogonal rotations. Throws NumericalError on
/// breakdown or non-convergence.
std::vector<cplx> complex_symmetric_ql(std::span<const cplx> d, std::span<const cplx> e);

/// Same spectrum through the dense Hessenberg QR of LAPACK (zhseqr). O(n^3)
/// time and O(n^2) memory; the robust fallback and an independent check.
std::vector<cplx> complex_tridiag_dense(std::span<const cplx> d, std::span<const cplx> e);

/// QL first, dense QR when QL breaks down.
std::vector<cplx> complex_symmetric_eigenvalues(std::span<const cplx> d, std::span<const cplx> e);

}  // namespace magres
