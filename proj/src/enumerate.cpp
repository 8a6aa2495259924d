#include "isocount/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <omp.h>

namespace isocount {

bool record_lex_less(const EnumRecord& a, const EnumRecord& b) {
  return a.coords < b.coords;
}

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

i64 isqrt_i128(i128 v) {
  if (v <= 0) return 0;
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(v)));
  while (static_cast<i128>(r) * r > v) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= v) ++r;
  return r;
}

// ---------------------------------------------------------------------------
// basis preprocessing: LLL size reduction of the majorant Gram matrix,
// tracked by an integral unimodular transform (pure performance; results
// are mapped back to the original basis)

struct Gso {
  std::vector<double> b;  // squared Gram-Schmidt norms
  Mat<double> mu;
};

Gso gso_from_gram(const Mat<double>& g) {
  const int n = g.rows;
  Gso s{std::vector<double>(n), Mat<double>(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      double m = g(i, j);
      for (int k = 0; k < j; ++k) m -= s.mu(i, k) * s.mu(j, k) * s.b[k];
      s.mu(i, j) = m / s.b[j];
    }
    double bi = g(i, i);
    for (int k = 0; k < i; ++k) bi -= s.mu(i, k) * s.mu(i, k) * s.b[k];
    s.b[i] = bi;
  }
  return s;
}

Mat<i64> lll_transform(Mat<double> g) {
  const int n = g.rows;
  Mat<i64> u = Mat<i64>::identity(n);
  auto add_col = [&](int dst, int src, i64 r) {
    // basis_dst -= r * basis_src
    for (int i = 0; i < n; ++i) u(i, dst) -= r * u(i, src);
    for (int i = 0; i < n; ++i) g(dst, i) -= static_cast<double>(r) * g(src, i);
    for (int i = 0; i < n; ++i) g(i, dst) -= static_cast<double>(r) * g(i, src);
  };
  auto swap_cols = [&](int a, int b) {
    for (int i = 0; i < n; ++i) std::swap(u(i, a), u(i, b));
    for (int i = 0; i < n; ++i) std::swap(g(a, i), g(b, i));
    for (int i = 0; i < n; ++i) std::swap(g(i, a), g(i, b));
  };
  const double delta = 0.99;
  int k = 1;
  int guard = 0;
  while (k < n && ++guard < 100000) {
    Gso s = gso_from_gram(g);
    for (int j = k - 1; j >= 0; --j) {
      double m = s.mu(k, j);
      if (std::abs(m) > 0.5) {
        i64 r = static_cast<i64>(std::llround(m));
        add_col(k, j, r);
        s = gso_from_gram(g);
      }
    }
    if (s.b[k] >= (delta - s.mu(k, k - 1) * s.mu(k, k - 1)) * s.b[k - 1]) {
      ++k;
    } else {
      swap_cols(k, k - 1);
      k = std::max(k - 1, 1);
    }
  }
  return u;
}

// ---------------------------------------------------------------------------
// shared preparation

struct Prep {
  int n = 0;
  Mat<i64> u;         // e_original = u * y
  Mat<i64> gram_red;  // u^T G u
  bool exact = false;

  // float path
  std::vector<double> fd;
  Mat<double> flow;  // unit lower triangular, entries (j,i) for j > i
  double fradius2 = 0;
  double v2d = 0;

  // exact path
  std::vector<Rat> ed;
  Mat<Rat> elow;
  Rat eradius2;
  Rat v2;
};

Prep prepare(const GramLattice& l, const TwistorPlane& p, const Rat& vmax) {
  if (vmax <= 0) throw PreconditionError("enumeration: V must be positive");
  if (!(p.lattice.gram == l.gram))
    throw PreconditionError("enumeration: plane was built for a different lattice");
  Prep pr;
  pr.n = l.rank;
  pr.exact = (p.mode == PlaneMode::exact);
  pr.v2 = vmax * vmax;
  pr.v2d = pr.v2.get_d();

  Mat<double> qd = pr.exact ? to_double_mat(p.majorant) : p.f_majorant;
  pr.u = lll_transform(qd);

  Mat<Int> ub = to_int_mat(pr.u);
  Mat<Int> gr = mul(mul(transpose(ub), to_int_mat(l.gram)), ub);
  pr.gram_red = Mat<i64>(pr.n, pr.n);
  for (size_t i = 0; i < gr.a.size(); ++i) {
    ISOCOUNT_CHECK(gr.a[i].fits_slong_p(), "reduced gram entry overflow");
    pr.gram_red.a[i] = gr.a[i].get_si();
  }

  if (pr.exact) {
    Mat<Rat> ur = to_rat_mat(ub);
    Mat<Rat> qred = mul(mul(transpose(ur), p.majorant), ur);
    LdlResult ldl = ldl_exact(qred);
    ISOCOUNT_CHECK(ldl.positive, "reduced majorant must stay positive definite");
    pr.ed = std::move(ldl.d);
    pr.elow = std::move(ldl.lower);
    pr.eradius2 = 2 * pr.v2;
    // float mirrors for the partition heuristics
    pr.fd.resize(pr.n);
    pr.flow = Mat<double>(pr.n, pr.n);
    for (int i = 0; i < pr.n; ++i) {
      pr.fd[i] = pr.ed[i].get_d();
      for (int j = 0; j < pr.n; ++j) pr.flow(i, j) = pr.elow(i, j).get_d();
    }
    pr.fradius2 = pr.eradius2.get_d();
  } else {
    // double LDL with a positivity check; search windows get inflated below
    Mat<double> qred(pr.n, pr.n);
    for (int i = 0; i < pr.n; ++i)
      for (int j = 0; j < pr.n; ++j) {
        double s = 0;
        for (int a = 0; a < pr.n; ++a)
          for (int b = 0; b < pr.n; ++b)
            s += pr.u(a, i) * qd(a, b) * pr.u(b, j);
        qred(i, j) = s;
      }
    pr.fd.assign(pr.n, 0.0);
    pr.flow = Mat<double>::identity(pr.n);
    for (int j = 0; j < pr.n; ++j) {
      double dj = qred(j, j);
      for (int k = 0; k < j; ++k) dj -= pr.flow(j, k) * pr.flow(j, k) * pr.fd[k];
      ISOCOUNT_CHECK(dj > 0, "float majorant lost positive definiteness");
      pr.fd[j] = dj;
      for (int i = j + 1; i < pr.n; ++i) {
        double v = qred(i, j);
        for (int k = 0; k < j; ++k) v -= pr.flow(i, k) * pr.flow(j, k) * pr.fd[k];
        pr.flow(i, j) = v / dj;
      }
    }
    pr.fradius2 = 2 * pr.v2d * (1 + 1e-9) + 1e-9;
  }
  return pr;
}

// ---------------------------------------------------------------------------
// record construction

bool build_record(const GramLattice& l, const TwistorPlane& p, const Prep& pr,
                  const IVec& y, EnumRecord& out) {
  const int n = pr.n;
  IVec e(n, 0);
  bool zero = true;
  for (int i = 0; i < n; ++i) {
    i64 s = 0;
    for (int j = 0; j < n; ++j) s += pr.u(i, j) * y[j];
    e[i] = s;
    zero &= (s == 0);
  }
  if (zero) return false;
  i64 g = 0;
  for (i64 c : e) g = std::gcd(g, c < 0 ? -c : c);
  if (g != 1) return false;

  out.coords = std::move(e);
  out.exact = pr.exact;
  if (pr.exact) {
    out.snorm_sq_exact = seminorm_sq_exact(p, out.coords);
    ISOCOUNT_CHECK(out.snorm_sq_exact > 0 && out.snorm_sq_exact <= pr.v2,
                   "exact seminorm out of range for an accepted vector");
    out.snorm_sq = out.snorm_sq_exact.get_d();
    out.halfwidth = 0;
    out.boundary_uncertain = false;
  } else {
    BoundedValue b = seminorm_sq_float(p, out.coords);
    double thr = pr.v2d;
    double hw = b.halfwidth + 4 * 2.22e-16 * thr;
    if (b.value - hw > thr) return false;  // outside, reached via window slack
    out.snorm_sq = b.value;
    out.halfwidth = b.halfwidth;
    out.boundary_uncertain = (b.value + hw > thr);
  }
  out.hitting_time = 0.5 * std::log(out.snorm_sq);
  out.dir = direction(p, out.coords);
  (void)l;
  return true;
}

// ---------------------------------------------------------------------------
// depth-first search; Policy supplies the budget arithmetic

struct FloatPolicy {
  using Budget = double;
  const Prep& pr;
  Budget root() const { return pr.fradius2; }
  // window of y-values at `level` around center -w with budget t
  bool window(int level, double w, const Budget& t, i64& lo, i64& hi) const {
    if (t < 0) return false;
    double s = std::sqrt(t / pr.fd[level]) * (1 + 1e-12) + 1e-12;
    lo = static_cast<i64>(std::ceil(-w - s - 1e-9));
    hi = static_cast<i64>(std::floor(-w + s + 1e-9));
    return lo <= hi;
  }
  bool spend(int level, double w, i64 yv, const Budget& t, Budget& rest) const {
    double dev = yv + w;
    double used = pr.fd[level] * dev * dev;
    if (used > t * (1 + 1e-12) + 1e-12) return false;
    rest = t - used;
    if (rest < 0) rest = 0;
    return true;
  }
};

struct ExactPolicy {
  using Budget = Rat;
  const Prep& pr;
  Budget root() const { return pr.eradius2; }
  bool window(int level, const Rat& w, const Budget& t, i64& lo, i64& hi) const {
    if (t < 0) return false;
    Rat c = -w;
    Int k = isqrt_rat(t / pr.ed[level]);
    Int cf;
    mpz_fdiv_q(cf.get_mpz_t(), c.get_num().get_mpz_t(), c.get_den().get_mpz_t());
    Int lo_i = cf - k - 1, hi_i = cf + k + 1;
    while (Rat(lo_i) < c && pr.ed[level] * (c - Rat(lo_i)) * (c - Rat(lo_i)) > t) ++lo_i;
    while (Rat(hi_i) > c && pr.ed[level] * (Rat(hi_i) - c) * (Rat(hi_i) - c) > t) --hi_i;
    ISOCOUNT_CHECK(lo_i.fits_slong_p() && hi_i.fits_slong_p(),
                   "exact window exceeds 64-bit range");
    lo = lo_i.get_si();
    hi = hi_i.get_si();
    return lo <= hi;
  }
  bool spend(int level, const Rat& w, i64 yv, const Budget& t, Budget& rest) const {
    Rat dev = Rat(static_cast<long>(yv)) + w;
    Rat used = pr.ed[level] * dev * dev;
    if (used > t) return false;
    rest = t - used;
    return true;
  }
};

template <class Policy>
struct Dfs {
  const GramLattice& l;
  const TwistorPlane& p;
  const Prep& pr;
  Policy pol;
  std::vector<EnumRecord>* out;
  EnumStats stats;

  IVec y;

  explicit Dfs(const GramLattice& ll, const TwistorPlane& pp, const Prep& ppr,
               std::vector<EnumRecord>* sink)
      : l(ll), p(pp), pr(ppr), pol{ppr}, out(sink) {
    y.assign(pr.n, 0);
  }

  // center (float and exact agree through the policy's types) plus the
  // integer linear partials needed for the last-layer quadratic
  template <class W>
  void center_and_lin(int level, W& w, i64& lin) const {
    w = W(0);
    lin = 0;
    for (int j = level + 1; j < pr.n; ++j) {
      if (y[j] == 0) continue;
      if constexpr (std::is_same_v<W, double>)
        w += pr.flow(j, level) * static_cast<double>(y[j]);
      else
        w += pr.elow(j, level) * Rat(static_cast<long>(y[j]));
      lin += pr.gram_red(level, j) * y[j];
    }
  }

  void emit(IVec& yy) {
    EnumRecord rec;
    if (build_record(l, p, pr, yy, rec)) {
      ++stats.records;
      if (rec.boundary_uncertain) ++stats.boundary_uncertain;
      out->push_back(std::move(rec));
    }
  }

  // qpart = q of the vector determined by y_{level+1..n-1}
  void descend(int level, typename Policy::Budget budget, i64 qpart) {
    ++stats.nodes;
    using W = std::conditional_t<std::is_same_v<Policy, FloatPolicy>, double, Rat>;
    W w;
    i64 lin;
    center_and_lin(level, w, lin);
    if (level == 0) {
      solve_last(w, budget, lin, qpart);
      return;
    }
    i64 lo, hi;
    if (!pol.window(level, w, budget, lo, hi)) return;
    for (i64 t = lo; t <= hi; ++t) {
      typename Policy::Budget rest;
      if (!pol.spend(level, w, t, budget, rest)) continue;
      y[level] = t;
      i64 qnew = qpart + pr.gram_red(level, level) * t * t + 2 * t * lin;
      descend(level - 1, std::move(rest), qnew);
    }
    y[level] = 0;
  }

  void solve_last(const std::conditional_t<std::is_same_v<Policy, FloatPolicy>,
                                           double, Rat>& w,
                  const typename Policy::Budget& budget, i64 lin, i64 qpart) {
    const i64 a = pr.gram_red(0, 0);
    const i64 b = 2 * lin;
    const i64 c = qpart;
    auto try_root = [&](i64 t) {
      typename Policy::Budget rest;
      if (!pol.spend(0, w, t, budget, rest)) return;
      y[0] = t;
      emit(y);
      y[0] = 0;
    };
    if (a != 0) {
      i128 disc = static_cast<i128>(b) * b - 4 * static_cast<i128>(a) * c;
      if (disc < 0) return;
      i64 s = isqrt_i128(disc);
      if (static_cast<i128>(s) * s != disc) return;
      for (int sign = 0; sign < (s == 0 ? 1 : 2); ++sign) {
        i128 num = -static_cast<i128>(b) + (sign == 0 ? s : -s);
        if (num % (2 * static_cast<i128>(a)) != 0) continue;
        i128 root = num / (2 * static_cast<i128>(a));
        if (root > std::numeric_limits<i64>::max() ||
            root < std::numeric_limits<i64>::min())
          continue;
        try_root(static_cast<i64>(root));
      }
    } else if (b != 0) {
      if (c % b == 0) try_root(-c / b);
    } else if (c == 0) {
      // q is flat in y_0 on this fiber: every window value is isotropic
      i64 lo, hi;
      if (!pol.window(0, w, budget, lo, hi)) return;
      for (i64 t = lo; t <= hi; ++t) try_root(t);
    }
  }

  // run only the subtree fixing the top `prefix.size()` coordinates
  void run_subtree(const IVec& prefix) {
    typename Policy::Budget budget = pol.root();
    i64 qpart = 0;
    int level = pr.n - 1;
    for (i64 val : prefix) {
      using W = std::conditional_t<std::is_same_v<Policy, FloatPolicy>, double, Rat>;
      W w;
      i64 lin;
      center_and_lin(level, w, lin);
      typename Policy::Budget rest;
      if (!pol.spend(level, w, val, budget, rest)) return;
      y[level] = val;
      qpart += pr.gram_red(level, level) * val * val + 2 * val * lin;
      budget = rest;
      --level;
    }
    if (level < 0) {
      emit(y);
      return;
    }
    descend(level, std::move(budget), qpart);
  }

  void run_all() { descend(pr.n - 1, pol.root(), 0); }
};

// enumerate feasible top-level prefixes of the given depth, in order
template <class Policy>
void collect_prefixes(const Prep& pr, int depth, std::vector<IVec>& out) {
  Policy pol{pr};
  IVec y(pr.n, 0);
  IVec prefix;
  std::function<void(int, typename Policy::Budget)> rec =
      [&](int level, typename Policy::Budget budget) {
        if (static_cast<int>(prefix.size()) == depth) {
          out.push_back(prefix);
          return;
        }
        typename Policy::Budget rest;
        using W = std::conditional_t<std::is_same_v<Policy, FloatPolicy>, double, Rat>;
        W w = W(0);
        for (int j = level + 1; j < pr.n; ++j) {
          if (y[j] == 0) continue;
          if constexpr (std::is_same_v<W, double>)
            w += pr.flow(j, level) * static_cast<double>(y[j]);
          else
            w += pr.elow(j, level) * Rat(static_cast<long>(y[j]));
        }
        i64 lo, hi;
        if (!pol.window(level, w, budget, lo, hi)) return;
        for (i64 t = lo; t <= hi; ++t) {
          if (!pol.spend(level, w, t, budget, rest)) continue;
          y[level] = t;
          prefix.push_back(t);
          rec(level - 1, rest);
          prefix.pop_back();
        }
        y[level] = 0;
      };
  rec(pr.n - 1, pol.root());
}

template <class Policy>
EnumStats run_partitioned(const GramLattice& l, const TwistorPlane& p,
                          const Prep& pr, EnumConsumer& sink, int workers) {
  if (workers <= 0) workers = omp_get_max_threads();
  // partition at depth 1..3 until there is enough independent work
  std::vector<IVec> tasks;
  const int want = std::max(32, 8 * workers);
  for (int depth = 1; depth <= std::min(3, pr.n - 1); ++depth) {
    tasks.clear();
    collect_prefixes<Policy>(pr, depth, tasks);
    if (static_cast<int>(tasks.size()) >= want) break;
  }
  if (tasks.empty()) tasks.push_back({});

  EnumStats total;
  const int block = std::max(4 * workers, 16);
  std::vector<std::vector<EnumRecord>> bufs(block);
  std::vector<EnumStats> stats(block);
  for (size_t base = 0; base < tasks.size(); base += block) {
    const int m = static_cast<int>(std::min<size_t>(block, tasks.size() - base));
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (int i = 0; i < m; ++i) {
      Dfs<Policy> dfs(l, p, pr, &bufs[i]);
      dfs.run_subtree(tasks[base + i]);
      stats[i] = dfs.stats;
    }
    for (int i = 0; i < m; ++i) {
      total.nodes += stats[i].nodes;
      total.records += stats[i].records;
      total.boundary_uncertain += stats[i].boundary_uncertain;
      for (EnumRecord& r : bufs[i]) sink.add(r);
      bufs[i].clear();
    }
  }
  return total;
}

struct CollectConsumer : EnumConsumer {
  std::vector<EnumRecord> recs;
  void add(const EnumRecord& r) override { recs.push_back(r); }
};

}  // namespace

EnumStats enumerate_isotropic(const GramLattice& l, const TwistorPlane& p,
                              const Rat& vmax, EnumConsumer& sink, int workers) {
  Prep pr = prepare(l, p, vmax);
  if (pr.exact)
    return run_partitioned<ExactPolicy>(l, p, pr, sink, workers);
  return run_partitioned<FloatPolicy>(l, p, pr, sink, workers);
}

std::vector<EnumRecord> enumerate_collect(const GramLattice& l,
                                          const TwistorPlane& p,
                                          const Rat& vmax, int workers,
                                          std::int64_t limit) {
  CollectConsumer c;
  enumerate_isotropic(l, p, vmax, c, workers);
  std::sort(c.recs.begin(), c.recs.end(), record_lex_less);
  if (limit >= 0 && static_cast<std::int64_t>(c.recs.size()) > limit)
    c.recs.resize(limit);
  return std::move(c.recs);
}

std::vector<EnumRecord> enumerate_serial(const GramLattice& l,
                                         const TwistorPlane& p,
                                         const Rat& vmax) {
  Prep pr = prepare(l, p, vmax);
  std::vector<EnumRecord> recs;
  if (pr.exact) {
    Dfs<ExactPolicy> dfs(l, p, pr, &recs);
    dfs.run_all();
  } else {
    Dfs<FloatPolicy> dfs(l, p, pr, &recs);
    dfs.run_all();
  }
  std::sort(recs.begin(), recs.end(), record_lex_less);
  return recs;
}

std::vector<EnumRecord> brute_force_oracle(const GramLattice& l,
                                           const TwistorPlane& p,
                                           const Rat& vmax) {
  if (l.rank > 7)
    throw PreconditionError("brute_force_oracle: rank guard (<= 7) violated");
  if (p.mode != PlaneMode::exact)
    throw PreconditionError("brute_force_oracle: exact mode only");
  if (vmax <= 0) throw PreconditionError("oracle: V must be positive");
  const int n = l.rank;
  const Rat v2 = vmax * vmax;

  // proven ellipsoid bounding box: |e_i| <= V * sqrt(2 * (Q^-1)_ii)
  Mat<Rat> qinv = inverse_exact(p.majorant);
  IVec bound(n);
  for (int i = 0; i < n; ++i) {
    Int k = isqrt_rat(2 * v2 * qinv(i, i));
    ISOCOUNT_CHECK(k.fits_slong_p(), "oracle box bound overflow");
    bound[i] = k.get_si() + 1;  // inclusive safety pad
  }

  // integer-cleared seminorm matrix: den * (G * pi)
  Int den = 1;
  for (const Rat& v : p.seminorm_mat.a) {
    Int d0 = v.get_den();
    den = den / gcd(den, d0) * d0;
  }
  Mat<i64> w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat e = p.seminorm_mat(i, j) * Rat(den);
      ISOCOUNT_CHECK(e.get_den() == 1 && e.get_num().fits_slong_p(),
                     "cleared seminorm entry overflow");
      w(i, j) = e.get_num().get_si();
    }
  // acceptance test: snorm_num(e) * q(V)^2 <= p(V)^2 * den
  const Int vp = v2.get_num(), vq = v2.get_den();
  ISOCOUNT_CHECK(vp.fits_slong_p() && vq.fits_slong_p(), "oracle V overflow");
  const i128 rhs = static_cast<i128>(vp.get_si()) * den.get_si();
  const i64 vden = vq.get_si();

  std::vector<EnumRecord> recs;
  IVec e(n, -1);
  for (int i = 0; i < n; ++i) e[i] = -bound[i];
  while (true) {
    // q(e) and den*snorm(e)
    i128 q = 0, s = 0;
    for (int i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      i64 rowq = 0, rows = 0;
      for (int j = 0; j < n; ++j) {
        rowq += l.gram(i, j) * e[j];
        rows += w(i, j) * e[j];
      }
      q += static_cast<i128>(e[i]) * rowq;
      s += static_cast<i128>(e[i]) * rows;
    }
    if (q == 0 && s * vden <= rhs) {
      i64 g = 0;
      for (i64 c : e) g = std::gcd(g, c < 0 ? -c : c);
      if (g == 1) {
        EnumRecord rec;
        rec.coords = e;
        rec.exact = true;
        rec.snorm_sq_exact = seminorm_sq_exact(p, e);
        rec.snorm_sq = rec.snorm_sq_exact.get_d();
        rec.hitting_time = 0.5 * std::log(rec.snorm_sq);
        rec.dir = direction(p, e);
        recs.push_back(std::move(rec));
      }
    }
    // odometer, most significant coordinate first for lexicographic order
    int i = n - 1;
    while (i >= 0 && e[i] == bound[i]) {
      e[i] = -bound[i];
      --i;
    }
    if (i < 0) break;
    ++e[i];
  }
  return recs;
}

}  // namespace isocount
