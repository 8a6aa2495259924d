#pragma once

#include <cstdint>
#include <vector>

#include "isocount/plane.hpp"

namespace isocount {

/// One primitive isotropic vector with its seminorm data.
struct EnumRecord {
  IVec coords;
  Rat snorm_sq_exact;        // set in exact mode
  double snorm_sq = 0.0;     // float value (both modes)
  double halfwidth = 0.0;    // rigorous half-width, 0 in exact mode
  double hitting_time = 0.0; // 0.5 * log(snorm_sq)
  std::vector<double> dir;   // unit vector on S^(r-1)(P)
  bool boundary_uncertain = false;
  bool exact = false;
};

struct EnumStats {
  std::uint64_t nodes = 0;
  std::uint64_t records = 0;
  std::uint64_t boundary_uncertain = 0;
};

/// Streaming consumer.  add() is invoked in a deterministic order that does
/// not depend on the worker count (subtree-major, in-subtree search order).
class EnumConsumer {
 public:
  virtual ~EnumConsumer() = default;
  virtual void add(const EnumRecord& rec) = 0;
};

/// Enumerates every primitive isotropic e with ||e||_P <= V, both signs,
/// via depth-first search on the positive-definite majorant with
/// radius^2 = 2V^2 and the last basis layer solved as an integer quadratic.
/// Work is partitioned over top-level subtrees across OpenMP workers;
/// results are fed to the sink in canonical subtree order.
EnumStats enumerate_isotropic(const GramLattice& l, const TwistorPlane& p,
                              const Rat& vmax, EnumConsumer& sink,
                              int workers = 1);

/// Collects and sorts into canonical lexicographic coordinate order.
std::vector<EnumRecord> enumerate_collect(const GramLattice& l,
                                          const TwistorPlane& p,
                                          const Rat& vmax, int workers = 1,
                                          std::int64_t limit = -1);

/// Serial reference implementation: one straightforward depth-first pass,
/// no partitioning.  Kept for testing the parallel kernel and as the
/// baseline of the benchmark target.
std::vector<EnumRecord> enumerate_serial(const GramLattice& l,
                                         const TwistorPlane& p,
                                         const Rat& vmax);

/// Independent oracle: scans the proven bounding box of the majorant
/// ellipsoid coordinate by coordinate.  rank <= 7 and exact mode only.
std::vector<EnumRecord> brute_force_oracle(const GramLattice& l,
                                           const TwistorPlane& p,
                                           const Rat& vmax);

bool record_lex_less(const EnumRecord& a, const EnumRecord& b);

}  // namespace isocount
