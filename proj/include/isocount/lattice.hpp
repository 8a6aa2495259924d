#pragma once

#include <string>

#include "isocount/exact.hpp"
#include "isocount/linalg.hpp"
#include "isocount/matrix.hpp"

namespace isocount {

/// An integral lattice given by its Gram matrix in a fixed basis.
/// Immutable after construction; safe to share across threads.
struct GramLattice {
  Mat<i64> gram;      // symmetric, integer intersection numbers
  int rank = 0;
  Inertia signature;  // (pos, zero, neg); zero == 0 for everything we build
  bool even = false;
  Int determinant;
  bool excluded_from_asymptotic = false;  // the reducible signature (2,2)

  int exponent_expected() const { return signature.pos + signature.neg - 2; }
};

/// Validates symmetry, derives signature/parity/determinant.
GramLattice make_lattice(Mat<i64> gram);

/// U^3 + two copies of E8 with negated form; rank 22, even, det -1,
/// signature (3,0,19).  Basis order fixed: U1, U2, U3, then the two
/// negated E8 blocks.
GramLattice k3_lattice();

/// diag(+1 x p, -1 x q).  Signature (2,2) is accepted but flagged.
GramLattice diagonal_lattice(int p, int q);

/// The 8x8 E8 Gram matrix in the standard root basis (diagonal 2s,
/// Dynkin adjacency -1s).
Mat<i64> e8_gram();

Int quadratic_value(const GramLattice& l, const ZVec& v);
Int bilinear_value(const GramLattice& l, const ZVec& v, const ZVec& w);
inline Int quadratic_value(const GramLattice& l, const IVec& v) {
  return quadratic_value(l, to_zvec(v));
}
inline Int bilinear_value(const GramLattice& l, const IVec& v, const IVec& w) {
  return bilinear_value(l, to_zvec(v), to_zvec(w));
}

/// True iff the gcd of the coordinates is 1.  Rejects the zero vector.
bool is_primitive(const ZVec& v);
inline bool is_primitive(const IVec& v) { return is_primitive(to_zvec(v)); }

bool is_even_unimodular(const Mat<i64>& gram);
inline bool is_even_unimodular(const Mat<Int>& gram) {
  Mat<i64> g(gram.rows, gram.cols);
  for (size_t i = 0; i < gram.a.size(); ++i) {
    ISOCOUNT_CHECK(gram.a[i].fits_slong_p(), "gram entry out of range");
    g.a[i] = gram.a[i].get_si();
  }
  return is_even_unimodular(g);
}

/// For unimodular L and primitive w, a vector x with x.w == 1 via extended
/// gcd on gram*w.  The postcondition is asserted on every call.
ZVec dual_pairing_solve(const GramLattice& l, const ZVec& w);

/// Plain-text matrix format: first line n, then n rows of n integers.
std::string lattice_to_text(const GramLattice& l);
GramLattice lattice_from_text(const std::string& text);

}  // namespace isocount
