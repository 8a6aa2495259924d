#pragma once

#include <string>
#include <vector>

#include "isocount/enumerate.hpp"
#include "isocount/sphere.hpp"

namespace isocount {

/// N(V) on a grid of thresholds.  counts are definite memberships; records
/// whose seminorm interval straddles a threshold are tallied separately
/// and never silently assigned.
struct CountTable {
  std::vector<Rat> thresholds;  // increasing, positive
  std::vector<long long> counts;
  std::vector<long long> uncertain;
  int exponent_expected = 0;        // p + q - 2 of the ambient lattice
  Rat error_term_delta{4, 697633};  // metadata only; not testable at desk scale
  std::string plane_desc;
  bool exact_mode = false;
};

/// Streaming EnumConsumer building a CountTable; deterministic because the
/// enumeration feeds it in a worker-independent order.
class CountTableBuilder : public EnumConsumer {
 public:
  CountTableBuilder(const GramLattice& l, const TwistorPlane& p,
                    std::vector<Rat> thresholds);
  void add(const EnumRecord& rec) override;
  CountTable take();

 private:
  CountTable table_;
  std::vector<double> thr_d_;
};

/// Sum of w(direction) over records below each threshold (compensated
/// summation); boundary-uncertain records are excluded and counted.
class WeylWeightAccumulator : public EnumConsumer {
 public:
  WeylWeightAccumulator(std::vector<Rat> thresholds, int lmax);
  void add(const EnumRecord& rec) override;

  // |S_{l,m}| / N for threshold index t
  std::vector<WeylRow> weyl(size_t t) const;
  long long count(size_t t) const { return counts_[t]; }
  long long uncertain(size_t t) const { return uncertain_[t]; }
  size_t thresholds() const { return thr_d_.size(); }

 private:
  std::vector<double> thr_d_;
  std::vector<Rat> thr_;
  int lmax_;
  std::vector<long long> counts_, uncertain_;
  std::vector<std::vector<double>> sums_;  // [threshold][harmonic]
  std::vector<std::vector<double>> comp_;  // Kahan compensations
};

/// Sum of w(direction(e)) over records with seminorm <= V^2.  Weights live
/// on S^2, so r == 3 is required.
double weighted_count(const std::vector<EnumRecord>& records,
                      const WeightFunction& w, const Rat& vmax);

struct ExponentFit {
  double slope = 0;
  double stderr_slope = 0;
  double intercept = 0;
  int points = 0;
};

/// Least-squares slope of log N against log V over the index window
/// [lo, hi]; requires at least 3 thresholds with positive counts.
ExponentFit fit_exponent(const CountTable& table, int lo, int hi);

}  // namespace isocount
