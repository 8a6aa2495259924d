#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isocount/lattice.hpp"

namespace isocount {

enum class PlaneMode { exact, floating };

/// A positive-definite r-plane P in the real span of the lattice, with the
/// projector pi_P, the seminorm matrix G*pi_P, and the positive-definite
/// majorant 2*pi^T*G*pi - G.  Exact planes carry rational data; float
/// planes carry doubles plus a boundary margin.  Immutable once built.
struct TwistorPlane {
  GramLattice lattice;
  PlaneMode mode = PlaneMode::exact;
  int r = 0;

  // exact mode (empty in float mode)
  Mat<Rat> basis;         // r x n, rows are basis vectors
  Mat<Rat> gram_p;        // r x r, positive definite
  Mat<Rat> projector;     // n x n, idempotent, G-self-adjoint
  Mat<Rat> seminorm_mat;  // G * projector, symmetric PSD of rank r
  Mat<Rat> majorant;      // 2*G*projector - G, positive definite

  // float data (mirrors of the exact data when mode == exact)
  Mat<double> frame_pair;   // r x n; row i = (G * frame_i)^T, frame G-orthonormal
  Mat<double> f_majorant;   // n x n
  double margin = 0.0;      // relative boundary tolerance (float mode)
  std::uint64_t seed = 0;   // float-mode provenance

  int n() const { return lattice.rank; }
};

/// Exact-rational plane from r independent basis vectors (rows).
/// Rejects non-positive-definite spans naming the offending minor.
TwistorPlane make_plane(const GramLattice& l, const Mat<Rat>& basis_rows);

/// Convenience: integer basis rows.
TwistorPlane make_plane(const GramLattice& l, const std::vector<IVec>& basis_rows);

/// Seed-deterministic float-mode plane: gaussian draws are tilted into the
/// positive cone using the spectral decomposition of G, then
/// G-orthonormalized.  Bounded retries on degenerate draws.
TwistorPlane random_plane(const GramLattice& l, std::uint64_t seed);

/// ||e||_P^2 = q(pi_P e), exact.
Rat seminorm_sq_exact(const TwistorPlane& p, const IVec& e);
Rat seminorm_sq_exact(const TwistorPlane& p, const ZVec& e);

/// Float value with a rigorous half-width (evaluation rounding plus the
/// plane's construction margin).
struct BoundedValue {
  double value = 0.0;
  double halfwidth = 0.0;
};
BoundedValue seminorm_sq_float(const TwistorPlane& p, const IVec& e);

/// Coordinates of e_P / ||e||_P in the orthonormal frame of P.
/// Rejects vectors with zero projection.
std::vector<double> direction(const TwistorPlane& p, const IVec& e);

struct GenericityWitness {
  IVec x;  // q(x) == -2
  IVec v;  // independent of x, proportional projection (zero counts)
  int bound = 0;
};

struct WitnessSearchResult {
  std::vector<GenericityWitness> witnesses;
  bool exhaustive = false;  // the full height box was covered
  bool truncated = false;   // witness list capped, more exist
  std::uint64_t nodes = 0;
  int bound = 0;
};

struct WitnessSearchOptions {
  std::uint64_t node_budget = 200'000'000;
  std::size_t max_witnesses = 1000;
};

/// Exhaustive scan (exact mode only) for pairs (x, v) with q(x) = -2,
/// coordinate height <= bound, and linearly dependent projections to P.
/// Zero projections count as proportional.  An empty list certifies the
/// absence of obstructions up to the bound only when exhaustive is set.
WitnessSearchResult genericity_witness_search(const TwistorPlane& p, int bound,
                                              const WitnessSearchOptions& opt = {});

/// One-line JSON descriptor embedded in output files.
std::string plane_descriptor(const TwistorPlane& p);

}  // namespace isocount
