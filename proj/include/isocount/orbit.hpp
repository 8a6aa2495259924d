#pragma once

#include <string>
#include <vector>

#include "isocount/lattice.hpp"

namespace isocount {

/// One generator in a reduction schedule.
struct GenStep {
  enum class Kind { transvection, negate_u1, swap_u1 };
  Kind kind = Kind::transvection;
  ZVec f, a;  // transvection parameters (isotropic f, a orthogonal to f)
};

/// An integer matrix certified to preserve the Gram matrix, acting on
/// column coordinate vectors, with its generator provenance in
/// application order.
struct Isometry {
  Mat<Int> matrix;
  std::vector<GenStep> provenance;
};

/// Exact check matrix^T * G * matrix == G.
bool verify_isometry(const GramLattice& l, const Mat<Int>& m);
inline bool verify_isometry(const GramLattice& l, const Isometry& g) {
  return verify_isometry(l, g.matrix);
}

/// The unipotent map v -> v - (a.v) f + (f.v) a - q(a)/2 (f.v) f.
/// Requires q(f) == 0, f.a == 0, and an even lattice; fixes f.
Isometry eichler_transvection(const GramLattice& l, const ZVec& f, const ZVec& a);

Isometry compose(const GramLattice& l, const Isometry& after, const Isometry& first);
Isometry inverse(const GramLattice& l, const Isometry& g);
Isometry identity_isometry(const GramLattice& l);

/// Raised when the generator schedule exceeds its step bound; carries the
/// partial reduction.
struct ReductionError : std::runtime_error {
  ReductionError(const std::string& msg, Isometry p)
      : std::runtime_error(msg), partial(std::move(p)) {}
  Isometry partial;
};

/// Constructive one-orbit transitivity: an isometry gamma with
/// gamma * w == first basis vector f1, composed of Eichler transvections
/// against the two leading hyperbolic blocks plus U1 sign/swap moves.
/// The lattice must be even with its first two 2x2 blocks hyperbolic and
/// split off orthogonally; at most 64 generator applications.
Isometry reduce_to_standard(const GramLattice& l, const ZVec& w);
inline Isometry reduce_to_standard(const GramLattice& l, const IVec& w) {
  return reduce_to_standard(l, to_zvec(w));
}

/// gamma with gamma * v == w, via the two standard reductions.
Isometry map_between(const GramLattice& l, const ZVec& v, const ZVec& w);

/// The hyperbolic-plane splitting attached to a primitive null vector:
/// w together with x1 = x - k w spans U, and the listed complement data
/// describe its orthogonal complement.
struct SplittingCertificate {
  ZVec w, x, x1;
  Int k;                       // x.x == 2k
  Mat<Int> complement_basis;   // (n-2) x n, rows span the complement
  Mat<i64> complement_gram;
  bool complement_even_unimodular = false;
  Inertia complement_inertia;
};

SplittingCertificate hyperbolic_splitting(const GramLattice& l, const ZVec& w);
inline SplittingCertificate hyperbolic_splitting(const GramLattice& l, const IVec& w) {
  return hyperbolic_splitting(l, to_zvec(w));
}

}  // namespace isocount
