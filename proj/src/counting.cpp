#include "isocount/counting.hpp"

#include <algorithm>
#include <cmath>

#include "isocount/plane.hpp"

namespace isocount {

namespace {

void check_thresholds(const std::vector<Rat>& thr) {
  if (thr.empty()) throw PreconditionError("count table: no thresholds");
  for (size_t i = 0; i < thr.size(); ++i) {
    if (thr[i] <= 0) throw PreconditionError("count table: thresholds must be positive");
    if (i && thr[i] <= thr[i - 1])
      throw PreconditionError("count table: thresholds must increase");
  }
}

// membership of one record below threshold index i: 1 in, 0 out, -1 straddles
int classify(const EnumRecord& rec, const Rat& thr, double thr_d) {
  if (rec.exact) {
    Rat v2 = thr * thr;
    return rec.snorm_sq_exact <= v2 ? 1 : 0;
  }
  double v2 = thr_d * thr_d;
  double hw = rec.halfwidth + 4 * 2.22e-16 * v2;
  if (rec.snorm_sq + hw <= v2) return 1;
  if (rec.snorm_sq - hw > v2) return 0;
  return -1;
}

}  // namespace

CountTableBuilder::CountTableBuilder(const GramLattice& l, const TwistorPlane& p,
                                     std::vector<Rat> thresholds) {
  check_thresholds(thresholds);
  table_.thresholds = std::move(thresholds);
  table_.counts.assign(table_.thresholds.size(), 0);
  table_.uncertain.assign(table_.thresholds.size(), 0);
  table_.exponent_expected = l.exponent_expected();
  table_.plane_desc = plane_descriptor(p);
  table_.exact_mode = (p.mode == PlaneMode::exact);
  for (const Rat& t : table_.thresholds) thr_d_.push_back(t.get_d());
}

void CountTableBuilder::add(const EnumRecord& rec) {
  for (size_t i = 0; i < table_.thresholds.size(); ++i) {
    int c = classify(rec, table_.thresholds[i], thr_d_[i]);
    if (c == 1)
      ++table_.counts[i];
    else if (c == -1)
      ++table_.uncertain[i];
  }
}

CountTable CountTableBuilder::take() { return std::move(table_); }

WeylWeightAccumulator::WeylWeightAccumulator(std::vector<Rat> thresholds, int lmax)
    : thr_(std::move(thresholds)), lmax_(lmax) {
  check_thresholds(thr_);
  for (const Rat& t : thr_) thr_d_.push_back(t.get_d());
  counts_.assign(thr_.size(), 0);
  uncertain_.assign(thr_.size(), 0);
  size_t nharm = 0;
  for (int l = 1; l <= lmax_; ++l) nharm += 2 * l + 1;
  sums_.assign(thr_.size(), std::vector<double>(nharm, 0.0));
  comp_.assign(thr_.size(), std::vector<double>(nharm, 0.0));
}

void WeylWeightAccumulator::add(const EnumRecord& rec) {
  if (rec.dir.size() != 3)
    throw PreconditionError("weyl accumulator: directions must lie on S^2");
  Unit3 u{rec.dir[0], rec.dir[1], rec.dir[2]};
  std::vector<double> vals;
  vals.reserve(sums_[0].size());
  for (int l = 1; l <= lmax_; ++l)
    for (int m = -l; m <= l; ++m) vals.push_back(real_spherical_harmonic(l, m, u));
  for (size_t t = 0; t < thr_.size(); ++t) {
    int c = classify(rec, thr_[t], thr_d_[t]);
    if (c == -1) {
      ++uncertain_[t];
      continue;
    }
    if (c != 1) continue;
    ++counts_[t];
    for (size_t k = 0; k < vals.size(); ++k) {
      // Kahan update
      double yv = vals[k] - comp_[t][k];
      double s = sums_[t][k] + yv;
      comp_[t][k] = (s - sums_[t][k]) - yv;
      sums_[t][k] = s;
    }
  }
}

std::vector<WeylRow> WeylWeightAccumulator::weyl(size_t t) const {
  std::vector<WeylRow> rows;
  size_t k = 0;
  double n = static_cast<double>(std::max<long long>(counts_[t], 1));
  for (int l = 1; l <= lmax_; ++l)
    for (int m = -l; m <= l; ++m)
      rows.push_back({l, m, std::abs(sums_[t][k++]) / n});
  return rows;
}

double weighted_count(const std::vector<EnumRecord>& records,
                      const WeightFunction& w, const Rat& vmax) {
  if (vmax <= 0) throw PreconditionError("weighted_count: V must be positive");
  double acc = 0, comp = 0;
  const Rat v2_exact = vmax * vmax;
  const double v2 = v2_exact.get_d();
  for (const EnumRecord& rec : records) {
    if (rec.dir.size() != 3)
      throw PreconditionError("weighted_count: weights live on S^2 (r == 3)");
    bool in;
    if (rec.exact)
      in = rec.snorm_sq_exact <= v2_exact;
    else
      in = rec.snorm_sq <= v2;
    if (!in) continue;
    double y = w.eval({rec.dir[0], rec.dir[1], rec.dir[2]}) - comp;
    double s = acc + y;
    comp = (s - acc) - y;
    acc = s;
  }
  return acc;
}

ExponentFit fit_exponent(const CountTable& table, int lo, int hi) {
  if (lo < 0 || hi >= static_cast<int>(table.thresholds.size()) || lo > hi)
    throw PreconditionError("fit_exponent: bad index window");
  std::vector<double> xs, ys;
  for (int i = lo; i <= hi; ++i) {
    if (table.counts[i] <= 0) continue;
    xs.push_back(std::log(table.thresholds[i].get_d()));
    ys.push_back(std::log(static_cast<double>(table.counts[i])));
  }
  const int n = static_cast<int>(xs.size());
  if (n < 3)
    throw PreconditionError("fit_exponent: need at least 3 thresholds with positive counts");
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  ExponentFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0;
  for (int i = 0; i < n; ++i) {
    double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += r * r;
  }
  fit.stderr_slope = (n > 2) ? std::sqrt(rss / (n - 2) / sxx) : 0.0;
  return fit;
}

}  // namespace isocount
