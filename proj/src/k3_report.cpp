#include "isocount/k3.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "isocount/plane.hpp"

namespace isocount {

namespace {

IVec negate(const IVec& v) {
  IVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

bool lex_positive(const IVec& v) {
  for (i64 x : v) {
    if (x > 0) return true;
    if (x < 0) return false;
  }
  return false;
}

}  // namespace

K3Report k3_fibration_report(const GramLattice& l, const TwistorPlane& p,
                             const Rat& vmax, int genericity_bound,
                             int workers) {
  if (p.r != 3)
    throw PreconditionError("fibration report: twistor planes are 3-planes");
  K3Report rep;
  rep.genericity_bound = genericity_bound;

  if (p.mode == PlaneMode::exact) {
    WitnessSearchResult ws = genericity_witness_search(p, genericity_bound);
    rep.witnesses_found = ws.witnesses.size();
    if (!ws.witnesses.empty())
      rep.status = GenericityStatus::non_generic;
    else if (ws.exhaustive)
      rep.status = GenericityStatus::generic_up_to_bound;
    else
      rep.status = GenericityStatus::inconclusive;
  } else {
    rep.status = GenericityStatus::unverified_float;
  }

  std::vector<EnumRecord> recs = enumerate_collect(l, p, vmax, workers);
  rep.elliptic.reserve(recs.size());
  std::map<IVec, std::pair<const EnumRecord*, const EnumRecord*>> pairs;
  for (const EnumRecord& r : recs) {
    FibrationRecord f;
    f.fiber_class = r.coords;
    ISOCOUNT_CHECK(r.dir.size() == 3, "fibration pole must lie on S^2");
    f.pole = {r.dir[0], r.dir[1], r.dir[2]};
    f.volume = std::sqrt(r.snorm_sq);
    if (r.exact) f.volume_sq_exact = r.snorm_sq_exact;
    f.boundary_uncertain = r.boundary_uncertain;
    rep.elliptic.push_back(std::move(f));
    if (r.boundary_uncertain) ++rep.boundary_uncertain;

    IVec key = lex_positive(r.coords) ? r.coords : negate(r.coords);
    auto& slot = pairs[key];
    (lex_positive(r.coords) ? slot.first : slot.second) = &r;
  }

  for (const auto& [key, slot] : pairs) {
    if (slot.first == nullptr || slot.second == nullptr)
      throw InternalCheckError(
          "sign symmetry violated: an enumerated vector lacks its antipode");
    ISOCOUNT_CHECK(slot.first->snorm_sq == slot.second->snorm_sq,
                   "antipodal pair must share its volume");
    SLagRecord s;
    s.representative = key;
    s.equator_normal = {slot.first->dir[0], slot.first->dir[1], slot.first->dir[2]};
    s.volume = std::sqrt(slot.first->snorm_sq);
    s.boundary_uncertain = slot.first->boundary_uncertain;
    rep.slag.push_back(std::move(s));
  }

  rep.n_elliptic = static_cast<long long>(rep.elliptic.size());
  rep.n_slag = static_cast<long long>(rep.slag.size());
  ISOCOUNT_CHECK(2 * rep.n_slag == rep.n_elliptic,
                 "pairing identity 2 N_slag == N_elliptic");
  return rep;
}

std::vector<std::pair<IVec, double>> minimizing_surface_classes(const K3Report& rep) {
  std::vector<std::pair<IVec, double>> out;
  out.reserve(rep.elliptic.size());
  for (const FibrationRecord& f : rep.elliptic)
    out.push_back({f.fiber_class, f.volume});
  return out;
}

}  // namespace isocount
