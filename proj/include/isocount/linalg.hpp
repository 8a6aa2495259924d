#pragma once

#include "isocount/exact.hpp"
#include "isocount/matrix.hpp"

namespace isocount {

struct Inertia {
  int pos = 0, zero = 0, neg = 0;
  bool operator==(const Inertia&) const = default;
};

/// Exact signature of a symmetric rational matrix via congruence
/// diagonalization (no floating point).
Inertia inertia_exact(Mat<Rat> m);

/// Exact integer determinant (fraction-free Bareiss elimination).
Int det_bareiss(Mat<Int> m);

/// Rows form a basis of the saturation of ker(M) over the integers,
/// obtained from a column Hermite reduction by unimodular column moves.
Mat<Int> saturated_kernel_basis(const Mat<Int>& m);

/// True iff the Smith normal form of B has all invariant factors equal 1.
bool has_unit_elementary_divisors(Mat<Int> b);

/// Exact inverse of a nonsingular rational matrix (Gauss-Jordan).
Mat<Rat> inverse_exact(Mat<Rat> m);

/// Rank over the rationals.
int rank_exact(Mat<Rat> m);

/// Exact LDL^T of a symmetric rational matrix without pivoting.
/// positive == false reports the first non-positive pivot (0-based), which
/// for a positive-definiteness check names the offending leading minor.
struct LdlResult {
  bool positive = true;
  int bad_pivot = -1;
  std::vector<Rat> d;  // diagonal
  Mat<Rat> lower;      // unit lower triangular
};
LdlResult ldl_exact(const Mat<Rat>& m);

}  // namespace isocount
