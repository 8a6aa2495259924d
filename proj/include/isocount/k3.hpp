#pragma once

#include <vector>

#include "isocount/counting.hpp"
#include "isocount/enumerate.hpp"
#include "isocount/sphere.hpp"

namespace isocount {

/// An elliptic fibration record: fiber class, the point on the twistor
/// sphere where it occurs, and the Riemannian fiber volume ||e||_P.
struct FibrationRecord {
  IVec fiber_class;
  Unit3 pole{};
  double volume = 0;
  Rat volume_sq_exact;  // exact mode only
  bool boundary_uncertain = false;
};

/// A special Lagrangian fibration: the pair {e, -e} merged, carrying the
/// common equator normal (the +/- pole direction) and the same volume.
struct SLagRecord {
  IVec representative;  // member with positive leading coordinate
  Unit3 equator_normal{};
  double volume = 0;
  bool boundary_uncertain = false;
};

enum class GenericityStatus {
  generic_up_to_bound,  // exhaustive scan found no witness
  non_generic,          // witnesses found; geometric labels are advisory
  inconclusive,         // scan hit its work budget before completing
  unverified_float      // float-mode plane; proportionality undecidable
};

struct K3Report {
  std::vector<FibrationRecord> elliptic;
  std::vector<SLagRecord> slag;
  GenericityStatus status = GenericityStatus::unverified_float;
  int genericity_bound = 0;
  std::size_t witnesses_found = 0;
  long long n_elliptic = 0;
  long long n_slag = 0;
  long long boundary_uncertain = 0;
  // documentation metadata: each such fibration has 24 singular fibers
  // counted with multiplicity (the Euler number of the surface)
  static constexpr int kSingularFibersWithMultiplicity = 24;
};

/// Enumerates and translates: one FibrationRecord per primitive isotropic
/// vector (both e and -e, at antipodal poles), sLag records as merged
/// antipodal pairs with 2 * n_slag == n_elliptic exactly.  Genericity
/// failure downgrades the labels, never blocks the count.
K3Report k3_fibration_report(const GramLattice& l, const TwistorPlane& p,
                             const Rat& vmax, int genericity_bound,
                             int workers = 1);

/// Theorem-D vocabulary: the same classes relabeled as volume-minimizing
/// surface classes (homology class, volume).
std::vector<std::pair<IVec, double>> minimizing_surface_classes(const K3Report& rep);

}  // namespace isocount
